"""Closed forms for the mixture theory, with independent brute-force
verifiers and synthetic pool generators.

Every closed form here has a second, independent route to the same number:
discrete mutual information is re-derived by enumerating the mixture joint,
initial gradients are re-derived by central finite differences of the loss,
the mixture-variance identity is checked by Monte Carlo, the gradient-norm
identity by direct vector arithmetic, and the feature-collapse critical
ratio by sweeping generated pools through the composition pipeline. All
entropies use base-2 logarithms (the disjoint-mixture identities carry a
"+1 bit" term that fixes the base).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from cift.composition import MixRatio, MixturePlan, SubsampleSeeded, sweep_features
from cift.errors import (
    ConfigError,
    InsufficientData,
    OverlappingSupports,
    ShapeMismatch,
    SignViolation,
    ZeroGradient,
)
from cift.feature_store import FeatureMatrix, SourceTag

PROB_TOL = 1e-12


# --- discrete distributions --------------------------------------------------

@dataclass(frozen=True)
class DiscreteJoint:
    """A joint distribution over two finite symbol alphabets."""

    support_u: tuple[str, ...]
    support_v: tuple[str, ...]
    p: np.ndarray  # shape (|U|, |V|)

    def __post_init__(self) -> None:
        p = np.asarray(self.p, dtype=np.float64)
        if p.shape != (len(self.support_u), len(self.support_v)):
            raise ShapeMismatch(
                f"p has shape {p.shape}, supports are "
                f"{len(self.support_u)}x{len(self.support_v)}"
            )
        if (p < -PROB_TOL).any():
            raise ConfigError("negative probability in joint")
        if abs(p.sum() - 1.0) > PROB_TOL:
            raise ConfigError(f"joint sums to {p.sum()}, not 1")
        p = np.clip(p, 0.0, None)
        p.flags.writeable = False
        object.__setattr__(self, "p", p)

    def marginal_u(self) -> np.ndarray:
        return self.p.sum(axis=1)

    def marginal_v(self) -> np.ndarray:
        return self.p.sum(axis=0)


def entropy_bits(p: np.ndarray) -> float:
    """Shannon entropy in bits, with 0 log 0 = 0."""
    p = np.asarray(p, dtype=np.float64).reshape(-1)
    nz = p[p > 0]
    return float(-(nz * np.log2(nz)).sum())


def mutual_information_bits(joint: DiscreteJoint) -> float:
    pu, pv = joint.marginal_u(), joint.marginal_v()
    return entropy_bits(pu) + entropy_bits(pv) - entropy_bits(joint.p)


def normalized_mi_of_joint(joint: DiscreteJoint) -> float:
    """2 I(u,v) / (H(u) + H(v)), in [0, 1]."""
    hu = entropy_bits(joint.marginal_u())
    hv = entropy_bits(joint.marginal_v())
    if hu + hv == 0.0:
        return 0.0
    return 2.0 * mutual_information_bits(joint) / (hu + hv)


@dataclass(frozen=True)
class SubDatasetSpec:
    """One sub-dataset: independent core/shortcut marginals, with optional
    explicit symbol names. When symbols are omitted the mixture builder
    assigns names unique to the sub-dataset, making supports disjoint by
    construction."""

    u_dist: tuple[float, ...]
    v_dist: tuple[float, ...]
    u_symbols: tuple[str, ...] | None = None
    v_symbols: tuple[str, ...] | None = None

    def __post_init__(self) -> None:
        for name, dist, symbols in (
            ("u", self.u_dist, self.u_symbols),
            ("v", self.v_dist, self.v_symbols),
        ):
            arr = np.asarray(dist, dtype=np.float64)
            if (arr < 0).any() or abs(arr.sum() - 1.0) > PROB_TOL:
                raise ConfigError(f"{name}_dist is not a probability vector")
            if symbols is not None and len(symbols) != arr.size:
                raise ShapeMismatch(
                    f"{name}: {len(symbols)} symbols for {arr.size} probabilities"
                )
        object.__setattr__(self, "u_dist", tuple(float(x) for x in self.u_dist))
        object.__setattr__(self, "v_dist", tuple(float(x) for x in self.v_dist))

    @classmethod
    def uniform(cls, k_u: int, k_v: int) -> "SubDatasetSpec":
        return cls((1.0 / k_u,) * k_u, (1.0 / k_v,) * k_v)

    def symbols(self, index: int) -> tuple[tuple[str, ...], tuple[str, ...]]:
        us = self.u_symbols or tuple(f"d{index}:u{j}" for j in range(len(self.u_dist)))
        vs = self.v_symbols or tuple(f"d{index}:v{j}" for j in range(len(self.v_dist)))
        return us, vs


def mixture_joint(subs: Sequence[SubDatasetSpec]) -> DiscreteJoint:
    """Equal-weight mixture of independent sub-datasets over the union of
    their supports. Shared symbols pool probability mass, which is how
    overlapping-support mixtures are constructed."""
    if len(subs) < 2:
        raise ConfigError("a mixture needs at least two sub-datasets")
    u_symbols: list[str] = []
    v_symbols: list[str] = []
    resolved = []
    for i, sub in enumerate(subs):
        us, vs = sub.symbols(i)
        resolved.append((us, vs))
        u_symbols.extend(s for s in us if s not in u_symbols)
        v_symbols.extend(s for s in vs if s not in v_symbols)
    u_pos = {s: i for i, s in enumerate(u_symbols)}
    v_pos = {s: i for i, s in enumerate(v_symbols)}
    p = np.zeros((len(u_symbols), len(v_symbols)))
    w = 1.0 / len(subs)
    for sub, (us, vs) in zip(subs, resolved):
        block = np.outer(sub.u_dist, sub.v_dist)
        rows = [u_pos[s] for s in us]
        cols = [v_pos[s] for s in vs]
        p[np.ix_(rows, cols)] += w * block
    return DiscreteJoint(tuple(u_symbols), tuple(v_symbols), p)


def normalized_mi_closed_form(c_diversity: float) -> float:
    """Normalized mutual information of a two-sub-dataset disjoint mixture:
    4 / (C_diversity + 4), where C_diversity is the sum of the four
    sub-dataset marginal entropies in bits."""
    if c_diversity < 0:
        raise ConfigError(f"c_diversity must be >= 0, got {c_diversity}")
    return 4.0 / (c_diversity + 4.0)


def c_diversity_of(subs: Sequence[SubDatasetSpec]) -> float:
    """Sum of all sub-dataset marginal entropies, in bits."""
    return float(
        sum(entropy_bits(np.asarray(s.u_dist)) + entropy_bits(np.asarray(s.v_dist)) for s in subs)
    )


def normalized_mi_bruteforce(sub1: SubDatasetSpec, sub2: SubDatasetSpec) -> float:
    """Normalized MI of the equal-weight two-sub-dataset mixture, computed
    by direct summation over the joint. Requires disjoint supports."""
    (u1, v1), (u2, v2) = sub1.symbols(0), sub2.symbols(1)
    u_shared = set(u1) & set(u2)
    v_shared = set(v1) & set(v2)
    if u_shared or v_shared:
        raise OverlappingSupports(
            f"shared symbols: u={sorted(u_shared)}, v={sorted(v_shared)}"
        )
    return normalized_mi_of_joint(mixture_joint([sub1, sub2]))


def mi_overlap_bound(c_diversity: float, c_interleave: float) -> float:
    """Upper bound on normalized MI under partial support overlap:

        1 - C_div / (C_div + 4 - C_inter)

    computed in the rearranged form (4 - C_inter) / (C_div + 4 - C_inter)
    so that zero overlap reduces bit-exactly to the disjoint closed form.
    """
    if c_diversity < 0:
        raise ConfigError(f"c_diversity must be >= 0, got {c_diversity}")
    if not 0.0 <= c_interleave <= 4.0:
        raise ConfigError(f"c_interleave must be in [0, 4], got {c_interleave}")
    return (4.0 - c_interleave) / (c_diversity + 4.0 - c_interleave)


# --- mixture moments and learning dynamics -----------------------------------

def mixture_variance(mu1: float, var1: float, mu2: float, var2: float) -> float:
    """Variance of an equal-weight two-component mixture:
    (var1 + var2)/2 + (mu1 - mu2)^2 / 4."""
    if var1 < 0 or var2 < 0:
        raise ConfigError("variances must be >= 0")
    return 0.5 * (var1 + var2) + 0.25 * (mu1 - mu2) ** 2


def mixture_variance_mc(
    mu1: float, var1: float, mu2: float, var2: float, n: int, seed: int
) -> float:
    """Monte Carlo check of the mixture-variance identity: population
    variance of n draws from each component pooled together."""
    rng = np.random.default_rng(seed)
    a = rng.normal(mu1, np.sqrt(var1), n)
    b = rng.normal(mu2, np.sqrt(var2), n)
    return float(np.concatenate([a, b]).var())


def _as_2d(arr: np.ndarray, name: str) -> np.ndarray:
    arr = np.asarray(arr, dtype=np.float64)
    if arr.ndim == 1:
        arr = arr[:, None]
    if arr.ndim != 2:
        raise ShapeMismatch(f"{name} must be 1-d or 2-d, got ndim={arr.ndim}")
    return arr


def initial_gradients(
    u: np.ndarray, v: np.ndarray, y: np.ndarray
) -> tuple[np.ndarray, np.ndarray]:
    """Gradients of the MSE loss 0.5 * mean((w_u.u + w_v.v + b - y)^2) at
    w = 0, b = mean(y): exactly (-Cov(y, u), -Cov(y, v)) with the 1/n
    covariance convention that matches the mean-based loss."""
    u, v = _as_2d(u, "u"), _as_2d(v, "v")
    y = np.asarray(y, dtype=np.float64).reshape(-1)
    if u.shape[0] != y.size or v.shape[0] != y.size:
        raise ShapeMismatch(
            f"u has {u.shape[0]} rows, v has {v.shape[0]}, y has {y.size}"
        )
    yc = y - y.mean()
    grad_u = -(yc @ (u - u.mean(axis=0))) / y.size
    grad_v = -(yc @ (v - v.mean(axis=0))) / y.size
    return grad_u, grad_v


def initial_gradients_fd(
    u: np.ndarray, v: np.ndarray, y: np.ndarray, step: float = 1e-6
) -> tuple[np.ndarray, np.ndarray]:
    """Central finite differences of the same loss at the same point; the
    loss is quadratic in the weights, so this is exact up to roundoff."""
    u, v = _as_2d(u, "u"), _as_2d(v, "v")
    y = np.asarray(y, dtype=np.float64).reshape(-1)

    def loss(w_u: np.ndarray, w_v: np.ndarray) -> float:
        resid = u @ w_u + v @ w_v + y.mean() - y
        return 0.5 * float(np.mean(resid**2))

    def fd(dims: int, wrap: Callable[[np.ndarray], float]) -> np.ndarray:
        g = np.empty(dims)
        for j in range(dims):
            e = np.zeros(dims)
            e[j] = step
            g[j] = (wrap(e) - wrap(-e)) / (2.0 * step)
        return g

    zero_v = np.zeros(v.shape[1])
    zero_u = np.zeros(u.shape[1])
    return (
        fd(u.shape[1], lambda w: loss(w, zero_v)),
        fd(v.shape[1], lambda w: loss(zero_u, w)),
    )


@dataclass(frozen=True)
class GradientPair:
    g_real: np.ndarray
    g_synth: np.ndarray
    alpha: float

    def __post_init__(self) -> None:
        gr = np.asarray(self.g_real, dtype=np.float64).reshape(-1)
        gs = np.asarray(self.g_synth, dtype=np.float64).reshape(-1)
        if gr.size != gs.size:
            raise ShapeMismatch(f"gradient dims disagree: {gr.size} vs {gs.size}")
        if not (np.isfinite(gr).all() and np.isfinite(gs).all()):
            raise ConfigError("gradients must be finite")
        if not 0.0 <= self.alpha <= 1.0:
            raise ConfigError(f"alpha must be in [0, 1], got {self.alpha}")
        object.__setattr__(self, "g_real", gr)
        object.__setattr__(self, "g_synth", gs)


@dataclass(frozen=True)
class InterferenceResult:
    norm_sq_predicted: float
    norm_sq_direct: float
    fidelity: float


def gradient_interference(gp: GradientPair) -> InterferenceResult:
    """Squared norm of the mixed-batch gradient, two ways.

    Predicted: (1-a)^2 |gr|^2 + a^2 |gs|^2 + 2 a (1-a) |gr| |gs| * fidelity,
    where fidelity is the cosine of the two gradients (constructive when
    positive, destructive when negative). Direct: |(1-a) gr + a gs|^2.
    """
    nr = float(np.linalg.norm(gp.g_real))
    ns = float(np.linalg.norm(gp.g_synth))
    if nr == 0.0 or ns == 0.0:
        raise ZeroGradient("fidelity of a zero gradient is undefined")
    fidelity = float(gp.g_real @ gp.g_synth) / (nr * ns)
    a = gp.alpha
    predicted = (1 - a) ** 2 * nr**2 + a**2 * ns**2 + 2 * a * (1 - a) * nr * ns * fidelity
    mixed = (1 - a) * gp.g_real + a * gp.g_synth
    return InterferenceResult(
        norm_sq_predicted=float(predicted),
        norm_sq_direct=float(mixed @ mixed),
        fidelity=fidelity,
    )


# --- feature-space collapse ---------------------------------------------------

@dataclass(frozen=True)
class CollapseSpec:
    """Opposed-mean Gaussian pools: the signal lives on the first axis
    (mu_real > 0 > mu_synth), remaining axes are isotropic noise."""

    mu_real: float
    mu_synth: float
    sigma_real: float = 1.0
    sigma_synth: float = 1.0
    d: int = 8
    noise_dims_sigma: float = 1.0

    def __post_init__(self) -> None:
        if not (self.mu_real > 0.0 > self.mu_synth):
            raise SignViolation(
                f"needs mu_real > 0 > mu_synth, got {self.mu_real}, {self.mu_synth}"
            )
        if self.sigma_real <= 0 or self.sigma_synth <= 0:
            raise ConfigError("signal sigmas must be > 0")
        if self.noise_dims_sigma < 0:
            raise ConfigError("noise sigma must be >= 0")
        if self.d < 1:
            raise ConfigError(f"d must be >= 1, got {self.d}")


@dataclass(frozen=True)
class CollapsePoint:
    alpha_dc: float
    ratio_dc: float


def collapse_critical_fraction(mu_real: float, mu_synth: float) -> CollapsePoint:
    """Synthetic fraction at which the mixture mean crosses zero:
    alpha_dc = mu_real / (mu_real - mu_synth); ratio_dc = -mu_real/mu_synth
    is the same point as a synth:real parts ratio (it can exceed 1)."""
    if not (mu_real > 0.0 > mu_synth):
        raise SignViolation(
            f"needs mu_real > 0 > mu_synth, got {mu_real}, {mu_synth}"
        )
    return CollapsePoint(
        alpha_dc=mu_real / (mu_real - mu_synth),
        ratio_dc=-mu_real / mu_synth,
    )


def generate_collapse_pools(
    spec: CollapseSpec, n_real: int, n_synth: int, seed: int
) -> tuple[FeatureMatrix, FeatureMatrix]:
    """Draw the opposed-mean pools realizing the collapse model;
    deterministic given the seed (real pool drawn first)."""
    if n_real < 2 or n_synth < 2:
        raise InsufficientData("pool sizes must be >= 2")
    rng = np.random.default_rng(seed)

    def draw(n: int, mu: float, sigma: float) -> np.ndarray:
        x = np.empty((n, spec.d))
        x[:, 0] = rng.normal(mu, sigma, size=n)
        if spec.d > 1:
            # scale = 0 yields exact zeros for the noise axes
            x[:, 1:] = rng.normal(0.0, spec.noise_dims_sigma, size=(n, spec.d - 1))
        return x

    real = draw(n_real, spec.mu_real, spec.sigma_real)
    synth = draw(n_synth, spec.mu_synth, spec.sigma_synth)
    return (
        FeatureMatrix(real, SourceTag.REAL, f"collapse-real-seed{seed}"),
        FeatureMatrix(synth, SourceTag.SYNTHETIC, f"collapse-synth-seed{seed}"),
    )


def _moment_pinned_values(
    rng: np.random.Generator, n: int, target_sum: float, target_sumsq: float
) -> np.ndarray:
    # n values with the exact requested sum and sum of squares.
    if n < 2:
        raise InsufficientData("a moment-pinned block needs >= 2 values")
    z = rng.normal(size=n)
    z = z - z.mean()
    z = z / np.sqrt((z**2).sum())
    spread_sq = target_sumsq - target_sum**2 / n
    if spread_sq < 0:
        raise ConfigError(
            f"infeasible block targets: sum={target_sum}, sumsq={target_sumsq}"
        )
    return np.sqrt(spread_sq) * z + target_sum / n


def build_staged_pools(
    mu_targets: Sequence[float],
    sigma_targets: Sequence[float],
    block_rows: int = 100,
    dims: int = 4,
    noise_sigma: float = 0.5,
    seed: int = 11,
) -> tuple[FeatureMatrix, FeatureMatrix]:
    """Pools whose nested TakeAll mixtures hit given projection statistics.

    Stage j of the sweep 100:0, 100:100, ... consumes the first j blocks of
    the synthetic pool; each block's first-axis sum and sum of squares are
    pinned so the cumulative mixture has sample mean mu_targets[j] and
    sample standard deviation sigma_targets[j] (n-1 denominator). Noise on
    the remaining axes is kept small so the first principal component stays
    on the signal axis.
    """
    if len(mu_targets) != len(sigma_targets) or len(mu_targets) < 2:
        raise ConfigError("need matching mu/sigma target lists of length >= 2")
    rng = np.random.default_rng(seed)
    stages = len(mu_targets)
    totals = [block_rows * (j + 1) for j in range(stages)]
    sums = [totals[j] * mu_targets[j] for j in range(stages)]
    sumsqs = [
        (totals[j] - 1) * sigma_targets[j] ** 2 + totals[j] * mu_targets[j] ** 2
        for j in range(stages)
    ]

    def block(target_sum: float, target_sumsq: float) -> np.ndarray:
        x = rng.normal(0.0, noise_sigma, size=(block_rows, dims))
        x[:, 0] = _moment_pinned_values(rng, block_rows, target_sum, target_sumsq)
        return x

    real = block(sums[0], sumsqs[0])
    synth_blocks = [
        block(sums[j] - sums[j - 1], sumsqs[j] - sumsqs[j - 1]) for j in range(1, stages)
    ]
    return (
        FeatureMatrix(real, SourceTag.REAL, f"staged-real-seed{seed}"),
        FeatureMatrix(np.vstack(synth_blocks), SourceTag.SYNTHETIC, f"staged-synth-seed{seed}"),
    )


# --- oracle suites ------------------------------------------------------------

@dataclass(frozen=True)
class OracleCase:
    """One analytic-vs-brute-force comparison for the CLI report."""

    name: str
    analytic: float
    brute_force: float
    abs_diff: float
    passed: bool

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "analytic": self.analytic,
            "brute_force": self.brute_force,
            "abs_diff": self.abs_diff,
            "passed": self.passed,
        }


def _case(name: str, analytic: float, brute: float, tol: float) -> OracleCase:
    diff = abs(analytic - brute)
    return OracleCase(name, float(analytic), float(brute), float(diff), bool(diff <= tol))


def prop1_suite(sizes: Sequence[int] = (2, 4, 8), tol: float = 1e-9) -> list[OracleCase]:
    """Closed form 4/(C+4) vs enumerated normalized MI for uniform
    sub-dataset pairs over every (k, m) support-size combination."""
    cases = []
    for k in sizes:
        for m in sizes:
            sub1 = SubDatasetSpec.uniform(k, m)
            sub2 = SubDatasetSpec.uniform(k, m)
            c_div = c_diversity_of([sub1, sub2])
            cases.append(
                _case(
                    f"prop1/normalized-mi k={k} m={m}",
                    normalized_mi_closed_form(c_div),
                    normalized_mi_bruteforce(sub1, sub2),
                    tol,
                )
            )
    return cases


def _shifted_uniform_pair(k: int, shift: int) -> tuple[SubDatasetSpec, SubDatasetSpec]:
    # Sub-dataset 2's supports are shifted by `shift` symbols; shift >= k is
    # fully disjoint, shift = 0 is identical.
    names = [f"s{j}" for j in range(k + shift)]
    first = tuple(names[:k])
    second = tuple(names[shift : shift + k])
    u = (1.0 / k,) * k
    return (
        SubDatasetSpec(u, u, first, first),
        SubDatasetSpec(u, u, second, second),
    )


def prop2_suite(tol: float = 1e-9) -> list[OracleCase]:
    """Overlap bound: algebraic spot checks, exact agreement with the
    disjoint closed form at zero overlap, and a constructed family of
    overlapping mixtures whose measured normalized MI stays under the
    zero-overlap bound and falls to zero at full overlap."""
    cases = [
        _case("prop2/bound C=4 c_int=2", 1.0 / 3.0, mi_overlap_bound(4.0, 2.0), tol),
        _case("prop2/bound full overlap c_int=4", 0.0, mi_overlap_bound(7.3, 4.0), 0.0),
    ]
    for c_div in (0.0, 1.5, 4.0, 8.0):
        closed = normalized_mi_closed_form(c_div)
        bound = mi_overlap_bound(c_div, 0.0)
        cases.append(
            OracleCase(
                f"prop2/zero-overlap-consistency C={c_div}",
                closed,
                bound,
                abs(closed - bound),
                closed == bound,  # bit-exact by shared arithmetic form
            )
        )
    k = 4
    sub1, sub2 = _shifted_uniform_pair(k, k)
    bound_at_zero = normalized_mi_closed_form(c_diversity_of([sub1, sub2]))
    previous = None
    for shift in range(k, -1, -1):
        pair = _shifted_uniform_pair(k, shift)
        measured = normalized_mi_of_joint(mixture_joint(pair))
        monotone = previous is None or measured <= previous + PROB_TOL
        under = measured <= bound_at_zero + PROB_TOL
        target = 0.0 if shift == 0 else bound_at_zero
        cases.append(
            OracleCase(
                f"prop2/overlap-family k={k} shift={shift}",
                float(target),
                float(measured),
                float(abs(target - measured)),
                bool(under and monotone and (shift > 0 or measured <= tol)),
            )
        )
        previous = measured
    return cases


def prop3_suite(
    n_instances: int = 50, seed: int = 202, mc_n: int = 1_000_000
) -> list[OracleCase]:
    """Analytic initial gradients vs central finite differences on random
    linear-model instances, plus the mixture-variance identity vs Monte
    Carlo."""
    rng = np.random.default_rng(seed)
    worst = 0.0
    for _ in range(n_instances):
        n = int(rng.integers(50, 400))
        du = int(rng.integers(1, 6))
        dv = int(rng.integers(1, 6))
        u = rng.normal(size=(n, du))
        v = rng.normal(size=(n, dv))
        y = u @ rng.normal(size=du) + v @ rng.normal(size=dv) + 0.1 * rng.normal(size=n)
        gu, gv = initial_gradients(u, v, y)
        fu, fv = initial_gradients_fd(u, v, y)
        analytic = np.concatenate([gu, gv])
        fd = np.concatenate([fu, fv])
        rel = float(np.linalg.norm(analytic - fd) / np.linalg.norm(analytic))
        worst = max(worst, rel)
    cases = [
        OracleCase(
            f"prop3/gradient-fd max-rel-err over {n_instances} instances",
            0.0,
            worst,
            worst,
            worst <= 1e-5,
        )
    ]
    for i, (mu1, var1, mu2, var2) in enumerate(
        [(0.0, 1.0, 2.0, 1.0), (1.0, 0.5, -3.0, 2.0), (5.0, 4.0, 5.0, 4.0)]
    ):
        ident = mixture_variance(mu1, var1, mu2, var2)
        mc = mixture_variance_mc(mu1, var1, mu2, var2, mc_n, seed + i)
        cases.append(_case(f"prop3/mixture-variance case {i}", ident, mc, 0.01 * ident))
    return cases


def prop5_suite(
    n_triples: int = 1000, dims: Sequence[int] = (2, 64, 1024), seed: int = 55
) -> list[OracleCase]:
    """Gradient-norm identity: predicted vs directly computed squared norm
    of the mixed gradient on seeded random (g_real, g_synth, alpha)."""
    rng = np.random.default_rng(seed)
    cases = []
    per_dim = {d: 0 for d in dims}
    worst = {d: 0.0 for d in dims}
    for i in range(n_triples):
        d = dims[i % len(dims)]
        gp = GradientPair(
            rng.normal(size=d), rng.normal(size=d), float(rng.uniform())
        )
        res = gradient_interference(gp)
        rel = abs(res.norm_sq_predicted - res.norm_sq_direct) / res.norm_sq_direct
        worst[d] = max(worst[d], rel)
        per_dim[d] += 1
    for d in dims:
        cases.append(
            OracleCase(
                f"prop5/norm-identity dim={d} ({per_dim[d]} triples)",
                0.0,
                worst[d],
                worst[d],
                worst[d] <= 1e-10,
            )
        )
    return cases


def prop6_suite(seed: int = 7) -> list[OracleCase]:
    """Feature-collapse critical ratio: closed-form spot checks, the
    mixture-mean zero crossing on generated pools, and a small end-to-end
    sweep locating the SNR minimum within one grid step."""
    cases = [
        _case("prop6/alpha_dc mu=(2,-1)", 2.0 / 3.0, collapse_critical_fraction(2.0, -1.0).alpha_dc, 0.0),
        _case("prop6/ratio_dc mu=(2,-1)", 2.0, collapse_critical_fraction(2.0, -1.0).ratio_dc, 0.0),
        _case("prop6/alpha_dc mu=(1,-3)", 0.25, collapse_critical_fraction(1.0, -3.0).alpha_dc, 0.0),
    ]
    spec = CollapseSpec(mu_real=2.0, mu_synth=-1.0, d=4)
    n = 4000
    real, synth = generate_collapse_pools(spec, n, n, seed)
    point = collapse_critical_fraction(spec.mu_real, spec.mu_synth)
    # Exact-ratio blocks at alpha_dc = 2/3: one real part to two synthetic.
    n_r = n // 2
    mix_first_axis = np.concatenate(
        [real.data[:n_r, 0].astype(np.float64), synth.data[:, 0].astype(np.float64)]
    )
    n_total = mix_first_axis.size
    alpha = point.alpha_dc
    se = np.sqrt(((1 - alpha) * spec.sigma_real**2 + alpha * spec.sigma_synth**2) / n_total)
    cases.append(
        _case("prop6/mixture-mean zero crossing", 0.0, float(mix_first_axis.mean()), 3.0 * se)
    )
    grid = MixturePlan(
        ratios=tuple(MixRatio(12 - k, k) for k in range(12)),
        sampling=SubsampleSeeded(seed),
    )
    report = sweep_features(real, synth, grid)
    detected = report.points[report.decoherence_index].ratio.lam if report.decoherence_index is not None else float("nan")
    cases.append(
        _case("prop6/sweep locates collapse (grid step 1/12)", point.alpha_dc, detected, 1.0 / 12.0 + 1e-12)
    )
    return cases


SUITES: dict[str, Callable[[], list[OracleCase]]] = {
    "prop1": prop1_suite,
    "prop2": prop2_suite,
    "prop3": prop3_suite,
    "prop5": prop5_suite,
    "prop6": prop6_suite,
}


def run_suites(selector: str) -> list[OracleCase]:
    """Run one suite by name, or all of them in order."""
    if selector == "all":
        cases: list[OracleCase] = []
        for name in SUITES:
            cases.extend(SUITES[name]())
        return cases
    if selector not in SUITES:
        raise ConfigError(f"unknown oracle selector {selector!r}")
    return SUITES[selector]()
