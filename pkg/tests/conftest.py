import numpy as np
import pytest

from cift.feature_store import FeatureMatrix, SourceTag


@pytest.fixture
def rng():
    return np.random.default_rng(0)


def make_matrix(data, tag=SourceTag.REAL, dataset_id="test") -> FeatureMatrix:
    return FeatureMatrix(np.asarray(data, dtype=np.float64), tag, dataset_id)
