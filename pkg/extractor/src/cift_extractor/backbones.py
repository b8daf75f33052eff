"""Vision backbones exposing global-pooled penultimate features.

Each loader returns a ``Backbone`` whose ``encode`` maps a batch of RGB PIL
images to a float32 (n, width) array. Pretrained weights are the default;
``pretrained=False`` builds the same architecture with seeded random
weights, which keeps the file-format and shape contracts testable offline
(feature values are then meaningless for curation).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np
import torch
from PIL import Image

from cift_extractor.errors import BackboneUnavailable

IMAGENET_MEAN = (0.485, 0.456, 0.406)
IMAGENET_STD = (0.229, 0.224, 0.225)
CLIP_MEAN = (0.48145466, 0.4578275, 0.40821073)
CLIP_STD = (0.26862954, 0.26130258, 0.27577711)

RANDOM_INIT_SEED = 0


@dataclass(frozen=True)
class Backbone:
    name: str
    width: int
    encode: Callable[[Sequence[Image.Image]], np.ndarray]


def _preprocess(images: Sequence[Image.Image], size: int, mean, std) -> torch.Tensor:
    from torchvision import transforms

    pipeline = transforms.Compose(
        [
            transforms.Resize(size),
            transforms.CenterCrop(size),
            transforms.ToTensor(),
            transforms.Normalize(mean, std),
        ]
    )
    return torch.stack([pipeline(img) for img in images])


def _load_inception_v3(pretrained: bool) -> Backbone:
    from torchvision import models

    if pretrained:
        try:
            model = models.inception_v3(weights=models.Inception_V3_Weights.DEFAULT)
        except Exception as exc:
            raise BackboneUnavailable(f"inception_v3 weights unavailable: {exc}") from None
    else:
        torch.manual_seed(RANDOM_INIT_SEED)
        model = models.inception_v3(weights=None, aux_logits=False, init_weights=True)
    model.fc = torch.nn.Identity()
    model.eval()

    @torch.no_grad()
    def encode(images: Sequence[Image.Image]) -> np.ndarray:
        batch = _preprocess(images, 299, IMAGENET_MEAN, IMAGENET_STD)
        return model(batch).numpy().astype(np.float32)

    return Backbone("inception_v3", 2048, encode)


def _load_clip(pretrained: bool) -> Backbone:
    from transformers import CLIPVisionConfig, CLIPVisionModel

    if pretrained:
        try:
            model = CLIPVisionModel.from_pretrained("openai/clip-vit-base-patch32")
        except Exception as exc:
            raise BackboneUnavailable(f"clip weights unavailable: {exc}") from None
    else:
        torch.manual_seed(RANDOM_INIT_SEED)
        model = CLIPVisionModel(CLIPVisionConfig())
    model.eval()
    width = model.config.hidden_size

    @torch.no_grad()
    def encode(images: Sequence[Image.Image]) -> np.ndarray:
        batch = _preprocess(images, model.config.image_size, CLIP_MEAN, CLIP_STD)
        return model(pixel_values=batch).pooler_output.numpy().astype(np.float32)

    return Backbone("clip", width, encode)


def _load_dinov2(pretrained: bool) -> Backbone:
    from transformers import Dinov2Config, Dinov2Model

    if pretrained:
        try:
            model = Dinov2Model.from_pretrained("facebook/dinov2-base")
        except Exception as exc:
            raise BackboneUnavailable(f"dinov2 weights unavailable: {exc}") from None
    else:
        torch.manual_seed(RANDOM_INIT_SEED)
        model = Dinov2Model(Dinov2Config())
    model.eval()
    width = model.config.hidden_size

    @torch.no_grad()
    def encode(images: Sequence[Image.Image]) -> np.ndarray:
        size = model.config.image_size
        batch = _preprocess(images, size, IMAGENET_MEAN, IMAGENET_STD)
        return model(pixel_values=batch).pooler_output.numpy().astype(np.float32)

    return Backbone("dinov2", width, encode)


LOADERS = {
    "inception_v3": _load_inception_v3,
    "clip": _load_clip,
    "dinov2": _load_dinov2,
}


def load_backbone(name: str, pretrained: bool = True) -> Backbone:
    if name not in LOADERS:
        raise BackboneUnavailable(
            f"unknown backbone {name!r}; choose from {sorted(LOADERS)}"
        )
    return LOADERS[name](pretrained)
