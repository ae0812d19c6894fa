"""Edge AI service catalog: descriptors, the seed catalog, and matching."""

from __future__ import annotations

from dataclasses import dataclass, field


@dataclass(frozen=True)
class AIServiceDescriptor:
    id: str
    name: str
    task: str
    modalities: tuple[str, ...]
    target_classes: tuple[str, ...]
    latency_class: str  # realtime | near_realtime | batch
    resource_units: int
    snippet_template: str

    def __post_init__(self):
        if self.resource_units < 1:
            raise ValueError(f"{self.id}: resource_units must be >= 1")
        for placeholder in ("{ENDPOINT_URL}", "{UE_ID}"):
            if placeholder not in self.snippet_template:
                raise ValueError(f"{self.id}: snippet_template missing {placeholder}")

    def to_dict(self) -> dict:
        return {
            "id": self.id,
            "name": self.name,
            "task": self.task,
            "modalities": list(self.modalities),
            "target_classes": list(self.target_classes),
            "latency_class": self.latency_class,
            "resource_units": self.resource_units,
            "snippet_template": self.snippet_template,
        }


@dataclass
class RequirementProfile:
    """Structured deployment requirements collected from a service consumer."""

    modalities: list[str] = field(default_factory=list)
    realtime: bool = False
    target_classes: list[str] = field(default_factory=list)
    ue_ids: list[str] = field(default_factory=list)

    @classmethod
    def from_dict(cls, d: dict) -> "RequirementProfile":
        return cls(
            modalities=list(d.get("modalities", [])),
            realtime=bool(d.get("realtime", False)),
            target_classes=list(d.get("target_classes", [])),
            ue_ids=list(d.get("ue_ids", [])),
        )


_DETECTION_SNIPPET = '''import requests

ENDPOINT = "{ENDPOINT_URL}"
UE_IDS = "{UE_ID}".split(",")

def detect(frame_bytes: bytes, ue_id: str = UE_IDS[0]) -> dict:
    """Send one camera frame for inference; returns detections with labels."""
    response = requests.post(ENDPOINT, params={"ue": ue_id}, data=frame_bytes, timeout=5)
    response.raise_for_status()
    return response.json()
'''

_CLASSIFY_SNIPPET = '''import requests

ENDPOINT = "{ENDPOINT_URL}"
UE_IDS = "{UE_ID}".split(",")

def classify(image_bytes: bytes, ue_id: str = UE_IDS[0]) -> str:
    response = requests.post(ENDPOINT, params={"ue": ue_id}, data=image_bytes, timeout=10)
    response.raise_for_status()
    return response.json()["label"]
'''

_SEGMENT_SNIPPET = '''import requests

ENDPOINT = "{ENDPOINT_URL}"
UE_IDS = "{UE_ID}".split(",")

def segment(image_bytes: bytes, ue_id: str = UE_IDS[0]) -> bytes:
    response = requests.post(ENDPOINT, params={"ue": ue_id}, data=image_bytes, timeout=60)
    response.raise_for_status()
    return response.content
'''


def seed_catalog() -> list[AIServiceDescriptor]:
    return [
        AIServiceDescriptor(
            id="yolov8_det",
            name="YOLOv8 object detector",
            task="object_detection",
            modalities=("rgb_camera", "wide_angle_camera"),
            target_classes=("person", "dog", "cat", "bicycle", "car"),
            latency_class="realtime",
            resource_units=4,
            snippet_template=_DETECTION_SNIPPET,
        ),
        AIServiceDescriptor(
            id="resnet_cls",
            name="ResNet image classifier",
            task="classification",
            modalities=("rgb_camera",),
            target_classes=("dog", "cat", "bird", "vehicle"),
            latency_class="near_realtime",
            resource_units=2,
            snippet_template=_CLASSIFY_SNIPPET,
        ),
        AIServiceDescriptor(
            id="unet_seg",
            name="U-Net scene segmenter",
            task="segmentation",
            modalities=("rgb_camera", "wide_angle_camera"),
            target_classes=("road", "building", "vegetation", "water"),
            latency_class="batch",
            resource_units=6,
            snippet_template=_SEGMENT_SNIPPET,
        ),
    ]


class Catalog:
    def __init__(self, services: list[AIServiceDescriptor] | None = None):
        self._services: dict[str, AIServiceDescriptor] = {}
        for svc in services if services is not None else seed_catalog():
            if svc.id in self._services:
                raise ValueError(f"duplicate service id {svc.id}")
            self._services[svc.id] = svc

    def get(self, service_id: str) -> AIServiceDescriptor | None:
        return self._services.get(service_id)

    def list_services(self, filters: dict | None = None) -> list[AIServiceDescriptor]:
        """Stable id-ordered listing; filter fields are conjunctive."""
        results = []
        for svc_id in sorted(self._services):
            svc = self._services[svc_id]
            if filters and not self._matches_filters(svc, filters):
                continue
            results.append(svc)
        return results

    @staticmethod
    def _matches_filters(svc: AIServiceDescriptor, filters: dict) -> bool:
        for key, wanted in filters.items():
            if key in ("modalities", "target_classes"):
                if not set(_as_list(wanted)) <= set(getattr(svc, key)):
                    return False
            elif key in ("task", "latency_class", "id", "name"):
                if getattr(svc, key) != wanted:
                    return False
            else:
                return False
        return True

    def match_services(self, profile: RequirementProfile) -> list[AIServiceDescriptor]:
        """Services satisfying every hard constraint, best match first.

        Hard constraints: the service covers all requested modalities and
        target classes, and a realtime requirement forces a realtime latency
        class. Ranking prefers the fewest unused capabilities, then id order.
        """
        candidates = []
        for svc in self.list_services():
            if not set(profile.modalities) <= set(svc.modalities):
                continue
            if profile.realtime and svc.latency_class != "realtime":
                continue
            if not set(profile.target_classes) <= set(svc.target_classes):
                continue
            unused = len(set(svc.modalities) - set(profile.modalities)) + len(
                set(svc.target_classes) - set(profile.target_classes)
            )
            candidates.append((unused, svc.id, svc))
        candidates.sort(key=lambda item: (item[0], item[1]))
        return [svc for _, _, svc in candidates]


def _as_list(value) -> list:
    return value if isinstance(value, list) else [value]
