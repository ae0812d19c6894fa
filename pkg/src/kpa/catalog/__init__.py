"""Edge AI service catalog and provisioning."""

from .provisioning import (
    AlreadyTornDownError,
    CapacityError,
    ProvisioningError,
    UnknownServiceError,
    UnknownSubscriptionError,
    UnknownUEError,
    create_subscription,
    endpoint_url,
    get_subscription,
    headroom_report,
    list_for_ue,
    render_snippet,
    teardown,
)
from .services import AIServiceDescriptor, Catalog, RequirementProfile, seed_catalog

__all__ = [
    "AIServiceDescriptor",
    "AlreadyTornDownError",
    "CapacityError",
    "Catalog",
    "ProvisioningError",
    "RequirementProfile",
    "UnknownServiceError",
    "UnknownSubscriptionError",
    "UnknownUEError",
    "create_subscription",
    "endpoint_url",
    "get_subscription",
    "headroom_report",
    "list_for_ue",
    "render_snippet",
    "seed_catalog",
    "teardown",
]
