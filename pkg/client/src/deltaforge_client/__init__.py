"""Thin client SDK for RL training loops talking to a deltaforge service.

Pure transport: every method returns the service's parsed JSON body
verbatim, with no client-side recomputation of scores. Calls are
synchronous and blocking; training loops manage their own parallelism, and
one client may be shared across threads for independent requests.
"""

from deltaforge_client.client import ClientConfig, RewardClient, ServiceError, TransportError

__version__ = "0.1.0"

__all__ = ["ClientConfig", "RewardClient", "ServiceError", "TransportError", "__version__"]
