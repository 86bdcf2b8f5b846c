from .bus import BusAdversary, BusResult, bus_run, simulate
from .node import PIRServer, client_retrieve, serve, store
from .wire import WireMessage, decode_message, encode_message

__all__ = [
    "BusAdversary",
    "BusResult",
    "PIRServer",
    "WireMessage",
    "bus_run",
    "client_retrieve",
    "decode_message",
    "encode_message",
    "serve",
    "simulate",
    "store",
]
