"""Invariant suites run by ``gtrellis verify``; every failure carries a witness."""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from typing import Callable, Iterator

from .composition import (
    refined_representative_array,
    schreier_array,
    solvability_equivalence,
    x_composition_chain,
    y_composition_chain,
)
from .encoder import (
    degradation_profile,
    encode,
    impulse_response,
    reachable_states,
    register_view,
    replay_inputs,
    new_encoder,
    random_inputs,
    step,
    track,
)
from .errors import GTrellisError, NotControllable
from .generators import GeneratorTable, eta_check, factorize, representative_array
from .groups import (
    Chain,
    Subgroup,
    chain_factors,
    composition_refinement,
    eta,
    find_isomorphism,
    is_normal,
    is_simple_quotient,
    is_subgroup_set,
    jordan_holder_factors,
    quotient_group,
    random_subgroup,
    right_cosets,
)
from .schreier import (
    all_isomorphisms,
    controllable_form,
    dual_matrix,
    meet,
    prod,
    rectangle_family,
    rectangle_parameters,
    schreier_matrix,
    star_chain,
)
from .trellis import (
    TrellisSection,
    join_paths,
    left_image,
    next_set,
    prev_in_pletty,
    prev_set,
    random_path,
    right_image,
    validate_path,
    x_by_paths,
    y_by_paths,
)

EXHAUSTIVE_CAP = 512
SAMPLED_CAP = 4096
SUITES = ("group", "trellis", "schreier", "generators", "encoder", "composition")


@dataclass
class CheckResult:
    name: str
    passed: bool
    detail: str = ""
    witness: object = None


@dataclass
class Context:
    section: TrellisSection
    seed: int = 0
    random_steps: int = 10_000
    track_paths: int = 100
    track_length: int = 50
    samples: int = 200
    rng: random.Random = field(init=False)

    def __post_init__(self):
        self.rng = random.Random(self.seed)

    @property
    def exhaustive(self) -> bool:
        return self.section.B.order <= EXHAUSTIVE_CAP


class Failure(Exception):
    def __init__(self, detail: str, witness=None):
        super().__init__(detail)
        self.witness = witness


def _run(name: str, fn: Callable[[], object]) -> CheckResult:
    try:
        out = fn()
    except Failure as e:
        return CheckResult(name, False, str(e), e.witness)
    except GTrellisError as e:
        return CheckResult(name, False, f"{type(e).__name__}: {e}", getattr(e, "witness", None))
    return CheckResult(name, True, "" if out is None else str(out))


def _require(cond: bool, detail: str, witness=None):
    if not cond:
        raise Failure(detail, witness)


# ---------------------------------------------------------------------------
# group kernel


def group_suite(ctx: Context) -> Iterator[CheckResult]:
    sec = ctx.section
    B = sec.B
    ch = sec.chains

    def subgroups_closed():
        for label, H in [(f"X{j}", ch.X(j)) for j in range(ch.ell + 1)] + [(f"Y{k}", ch.Y(k)) for k in range(ch.ell + 1)]:
            _require(is_subgroup_set(B, H.members), f"{label} is not closed", label)

    def cosets_partition():
        for j in range(ch.ell + 1):
            cl = right_cosets(ch.X(j), ch.X(j - 1))
            union = set().union(*cl.cosets)
            _require(union == set(ch.X(j).members), f"cosets of X{j - 1} do not cover X{j}", j)
            _require(sum(map(len, cl.cosets)) == ch.X(j).order, f"cosets of X{j - 1} overlap", j)
            _require(all(len(c) == ch.X(j - 1).order for c in cl.cosets), f"coset sizes differ in X{j}", j)
            _require(cl.transversal[0] == B.identity, "identity is not the first representative", j)

    def projection_homomorphism():
        Q, proj = quotient_group(B.whole, sec.X0)
        pairs = itertools.product(range(B.order), repeat=2) if ctx.exhaustive else (
            (ctx.rng.randrange(B.order), ctx.rng.randrange(B.order)) for _ in range(ctx.samples * 50)
        )
        for a, b in pairs:
            _require(proj[B.mul(a, b)] == Q.mul(proj[a], proj[b]), "B -> B/X0 is not a homomorphism", (a, b))
        _require(Q.order == sec.S.order, "B/X0 and S differ in order")
        if Q.order <= 64:
            _require(find_isomorphism(Q, sec.S) is not None, "B/X0 is not isomorphic to S")

    def refinement_simple():
        chain = composition_refinement(Chain((B.trivial, sec.X0, B.whole)))
        for lo, hi in chain.steps():
            _require(is_simple_quotient(hi, lo), "refined step has a non-simple factor", (lo.order, hi.order))

    def jordan_holder_invariance():
        a = chain_factors(composition_refinement(Chain((B.trivial, sec.X0, B.whole))))
        b = chain_factors(composition_refinement(Chain((B.trivial, sec.Y0, B.whole))))
        c = jordan_holder_factors(B)
        _require(a == b == c, "factor multisets differ between refinements", (a, b, c))
        return f"eta={len(c)}"

    yield _run("group.subgroups_closed", subgroups_closed)
    yield _run("group.cosets_partition", cosets_partition)
    yield _run("group.projection_homomorphism", projection_homomorphism)
    yield _run("group.refinement_simple", refinement_simple)
    yield _run("group.jordan_holder_invariance", jordan_holder_invariance)


# ---------------------------------------------------------------------------
# trellis


def _random_subgroups(ctx: Context, n: int) -> list[Subgroup]:
    return [random_subgroup(ctx.section.B, ctx.rng) for _ in range(n)]


def trellis_suite(ctx: Context) -> Iterator[CheckResult]:
    sec = ctx.section
    B = sec.B
    ch = sec.chains
    ell = ch.ell
    X, Y = ch.X, ch.Y

    def chains_normal():
        for j in range(-1, ell + 1):
            _require(is_normal(B.whole, X(j)), f"X{j} is not normal", j)
            _require(is_normal(B.whole, Y(j)), f"Y{j} is not normal", j)

    def chains_match_paths():
        for j in range(ell + 1):
            _require(x_by_paths(sec, j) == X(j).members, f"X{j} differs from its path definition", j)
            _require(y_by_paths(sec, j) == Y(j).members, f"Y{j} differs from its path definition", j)
        return f"ell={ell}"

    def states_shift():
        for j in range(-1, ell):
            _require(right_image(sec, X(j).members) == left_image(sec, X(j + 1).members), f"X{j}+ != X{j + 1}-", j)
            _require(next_set(sec, X(j).members) == X(j + 1).members, f"N(X{j}) != X{j + 1}", j)
            _require(prev_set(sec, Y(j).members) == Y(j + 1).members, f"P(Y{j}) != Y{j + 1}", j)

    def fibers_are_cosets():
        for G in _random_subgroups(ctx, ctx.samples // 10) + [B.whole, sec.X0, sec.Y0]:
            GX, GY = meet(G, sec.X0), meet(G, sec.Y0)
            for s in left_image(sec, G.members):
                fib = {b for b in G.members if sec.left[b] == s}
                g = min(fib)
                _require(fib == {B.mul(x, g) for x in GX.members}, "left fiber is not a coset of G∩X0", (s, sorted(G.members)))
            for s in right_image(sec, G.members):
                fib = {b for b in G.members if sec.right[b] == s}
                g = min(fib)
                _require(fib == {B.mul(y, g) for y in GY.members}, "right fiber is not a coset of G∩Y0", (s, sorted(G.members)))

    def projections_of_products():
        subs = _random_subgroups(ctx, ctx.samples // 5)
        for G, H in zip(subs, subs[1:]):
            GH = {B.mul(g, h) for g in G.members for h in H.members}
            _require(right_image(sec, GH) == {sec.S.mul(a, b) for a in right_image(sec, G.members) for b in right_image(sec, H.members)}, "(GH)+ != G+H+", (sorted(G.members), sorted(H.members)))
            _require(left_image(sec, GH) == {sec.S.mul(a, b) for a in left_image(sec, G.members) for b in left_image(sec, H.members)}, "(GH)- != G-H-", (sorted(G.members), sorted(H.members)))

    def projections_of_intersections():
        # holds when one side contains the relevant kernel
        subs = _random_subgroups(ctx, ctx.samples // 5)
        for G, H in zip(subs, subs[1:]):
            Gp = prod(G, sec.Y0)
            Gm = prod(G, sec.X0)
            _require(right_image(sec, meet(Gp, H).members) == right_image(sec, Gp.members) & right_image(sec, H.members), "(G∩H)+ != G+∩H+ with Y0 ≤ G", (sorted(G.members), sorted(H.members)))
            _require(left_image(sec, meet(Gm, H).members) == left_image(sec, Gm.members) & left_image(sec, H.members), "(G∩H)- != G-∩H- with X0 ≤ G", (sorted(G.members), sorted(H.members)))

    def shifted_intersections():
        for j in range(-1, ell + 1):
            for k in range(0, ell + 1):
                a = right_image(sec, meet(X(j), Y(k)).members)
                b = left_image(sec, meet(X(j + 1), Y(k - 1)).members)
                _require(a == b, f"(X{j}∩Y{k})+ != (X{j + 1}∩Y{k - 1})-", (j, k))

    def next_set_properties():
        for j in range(ell):
            subs = [meet(G, X(j)) for G in _random_subgroups(ctx, ctx.samples // 10)]
            subs += [prod(G, meet(X(j), Y(0))) for G in subs]
            for J in subs:
                NJ = next_set(sec, J.members)
                _require(is_subgroup_set(B, NJ), "N(J) is not a subgroup", sorted(J.members))
            for J, H in itertools.product(subs, repeat=2):
                if not J <= H:
                    continue
                NJ, NH = Subgroup(B, next_set(sec, J.members)), Subgroup(B, next_set(sec, H.members))
                _require(NJ <= NH, "J ≤ H but N(J) not ≤ N(H)", (sorted(J.members), sorted(H.members)))
                if is_normal(H, J):
                    _require(is_normal(NH, NJ), "J ⊴ H but N(J) not ⊴ N(H)", (sorted(J.members), sorted(H.members)))
                K = meet(X(j), Y(0))
                if K <= J and K <= H and is_normal(NH, NJ):
                    _require(is_normal(H, J), "N(J) ⊴ N(H) but J not ⊴ H", (sorted(J.members), sorted(H.members)))

    def next_of_products():
        for _ in range(ctx.samples):
            G = {ctx.rng.randrange(B.order) for _ in range(ctx.rng.randint(1, 4))}
            H = {ctx.rng.randrange(B.order) for _ in range(ctx.rng.randint(1, 4))}
            GH = {B.mul(g, h) for g in G for h in H}
            NG, NH = next_set(sec, G), next_set(sec, H)
            _require(next_set(sec, GH) == {B.mul(a, b) for a in NG for b in NH}, "N(GH) != N(G)N(H)", (sorted(G), sorted(H)))

    def pletty_pullback():
        for j in range(ell):
            K = meet(X(j), Y(0))
            for _ in range(ctx.samples // 10):
                seeds = {ctx.rng.choice(sorted(X(j).members)) for _ in range(ctx.rng.randint(1, 3))}
                U = frozenset(B.mul(k, s) for s in seeds for k in K.members)
                _require(prev_in_pletty(sec, j, next_set(sec, U)) == U, "U != P_j(N(U))", (j, sorted(U)))

    def join_is_group():
        for j in range(min(ell, 2) + 1):
            segs = join_paths(sec, sec.X0.members, j)
            _require(len(segs) == sec.X0.order ** (j + 1), "join of X0 has the wrong size", j)
            sample = list(segs)[:30]
            for a, b in itertools.product(sample, repeat=2):
                c = tuple(B.mul(x, y) for x, y in zip(a, b))
                _require(c in segs, "join is not closed under products", (a, b))

    yield _run("trellis.chains_normal", chains_normal)
    if B.order <= EXHAUSTIVE_CAP:
        yield _run("trellis.chains_match_paths", chains_match_paths)
    yield _run("trellis.states_shift", states_shift)
    yield _run("trellis.fibers_are_cosets", fibers_are_cosets)
    yield _run("trellis.projections_of_products", projections_of_products)
    yield _run("trellis.projections_of_intersections", projections_of_intersections)
    yield _run("trellis.shifted_intersections", shifted_intersections)
    yield _run("trellis.next_set_properties", next_set_properties)
    yield _run("trellis.next_of_products", next_of_products)
    yield _run("trellis.pletty_pullback", pletty_pullback)
    yield _run("trellis.join_is_group", join_is_group)


# ---------------------------------------------------------------------------
# Schreier matrix


def schreier_suite(ctx: Context) -> Iterator[CheckResult]:
    sec = ctx.section
    B = sec.B
    ch = sec.chains
    ell = ch.ell

    def diagonal():
        M = schreier_matrix(sec)
        _require(M.controllable, "diagonal condition fails")
        controllable_form(M)

    def dual_agrees():
        _require(schreier_matrix(sec).controllable == dual_matrix(sec).controllable, "primal and dual disagree")

    def intersection_products():
        for j in range(ell + 1):
            acc = B.trivial
            for i in range(j + 1):
                acc = prod(acc, meet(ch.X(i), ch.Y(ell - i)))
            _require(acc == ch.X(j), f"product of diagonal intersections up to {j} is not X{j}", j)

    def entries_normal():
        M = schreier_matrix(sec)
        for key, H in M.entries.items():
            _require(is_normal(B.whole, H), f"entry {key} is not normal", key)
        for j in range(ell + 1):
            col = M.column(j)
            _require(all(a <= b for a, b in zip(col, col[1:])), f"column {j} is not ascending", j)
            _require(col[0] == ch.X(j - 1) and col[-1] == ch.X(j), f"column {j} endpoints", j)
        for k in range(-1, ell + 1):
            _require(M.entry(0, k) == meet(ch.X(0), ch.Y(k)), f"entry (0,{k}) differs from X0∩Y{k}", k)

    def star():
        sc = star_chain(sec)
        for H in sc:
            _require(is_normal(B.whole, H), "star chain term is not normal", H.order)

    def isomorphisms():
        n = 0
        for _label, _iso in all_isomorphisms(sec):
            n += 1
        return f"{n} maps"

    def rectangles():
        for k, m, l in rectangle_parameters(ell):
            fam = rectangle_family(sec, k, m, l)
            orders = fam.factor_orders()
            _require(len(set(orders)) == 1, f"rectangle ({k},{m},{l}) factor orders vary", orders)
            for j in range(l + 1):
                _require(is_normal(fam.H[j], fam.J[j]), f"rectangle ({k},{m},{l}): J{j} not normal in H{j}", j)
                _require(is_normal(meet(ch.X(j), ch.Y(k - j)), fam.D[j]), f"rectangle ({k},{m},{l}): D{j} not normal", j)
                if orders[0] <= 64:
                    Q0, _ = quotient_group(fam.H[0], fam.J[0])
                    Qj, _ = quotient_group(fam.H[j], fam.J[j])
                    _require(find_isomorphism(Q0, Qj) is not None, f"rectangle ({k},{m},{l}): factors not isomorphic", j)
                reps = right_cosets(fam.H[j], fam.J[j])
                S = meet(ch.X(j), ch.Y(k - j))
                inside = {reps.index_of[s] for s in S.members}
                _require(len(inside) == len(reps), f"rectangle ({k},{m},{l}): X{j}∩Y{k - j} misses a coset", j)

    yield _run("schreier.diagonal", diagonal)
    yield _run("schreier.dual_agrees", dual_agrees)
    yield _run("schreier.intersection_products", intersection_products)
    yield _run("schreier.entries_normal", entries_normal)
    yield _run("schreier.star_chain", star)
    yield _run("schreier.isomorphisms", isomorphisms)
    yield _run("schreier.rectangles", rectangles)


# ---------------------------------------------------------------------------
# generator tables


def table_checks(ctx: Context, table: GeneratorTable, prefix: str) -> Iterator[CheckResult]:
    sec = ctx.section
    B = sec.B
    ch = sec.chains

    def cells_product():
        e = eta_check(table)
        _require(e["cells_product"] == B.order, "cells do not multiply to |B|", e)
        return str(e)

    def components():
        for st in table.steps:
            for g in table.generators[st.key]:
                for j in range(st.span + 1):
                    _require(g[j] in meet(ch.X(j), st.hi[j]), f"generator {g} component {j} outside X_j∩hi", g)
                    _require(g[j] in table.cells[st.cell_key(j)], f"generator {g} component {j} is not a cell representative", g)
                validate_path(sec, g)
                _require(sec.left[g[0]] == sec.S.identity, "generator does not leave the identity state", g)
                _require(sec.right[g[-1]] == sec.S.identity, "generator does not merge to the identity state", g)
        if not table.refined:
            _require(set(table.cells.get((0, 0), (B.identity,))) == set(meet(ch.X(0), ch.Y(0)).members), "cell (0,0) is not X0∩Y0")
            for (j, i), reps in table.cells.items():
                if i >= 1 and (j + 1, i - 1) in table.cells:
                    _require(len(reps) == len(table.cells[(j + 1, i - 1)]), f"cells ({j},{i}) and ({j + 1},{i - 1}) differ in size", (j, i))
        for reps in table.cells.values():
            _require(reps[0] == B.identity, "identity is not the first representative", reps)

    def round_trip():
        targets = range(B.order) if ctx.exhaustive else [ctx.rng.randrange(B.order) for _ in range(ctx.samples)]
        seen = {}
        for b in targets:
            f = factorize(table, b)
            _require(B.prod(f.ordered_parts()) == b, "factorization does not multiply back", b)
            key = tuple(f.ordered_parts())
            _require(key not in seen, "two branches share a factorization", (seen.get(key), b))
            seen[key] = b

    yield _run(f"{prefix}.cells_product", cells_product)
    yield _run(f"{prefix}.components", components)
    yield _run(f"{prefix}.round_trip", round_trip)


def generators_suite(ctx: Context) -> Iterator[CheckResult]:
    table = representative_array(ctx.section)
    yield from table_checks(ctx, table, "generators")


# ---------------------------------------------------------------------------
# encoder


def encoder_checks(ctx: Context, table: GeneratorTable, prefix: str) -> Iterator[CheckResult]:
    sec = ctx.section
    B = sec.B

    def completeness():
        targets = range(B.order) if ctx.exhaustive else [ctx.rng.randrange(B.order) for _ in range(ctx.samples)]
        for b in targets:
            out = encode(table, replay_inputs(table, b))
            _require(out[-1] == b, "replayed inputs do not reach the branch", b)

    def validity():
        out = encode(table, random_inputs(sec, ctx.random_steps, ctx.rng))
        for t in range(len(out) - 1):
            _require(sec.right[out[t]] == sec.left[out[t + 1]], "consecutive outputs do not connect", t)

    def tracking():
        for _ in range(ctx.track_paths):
            path = random_path(sec, ctx.track_length, ctx.rng)
            res = track(table, path, path[0])
            _require(res.exact, "tracking is not exact", path)

    def impulse():
        for k, gens in table.generator_paths.items():
            for w, g in enumerate(gens):
                resp = impulse_response(table, k, w)
                _require(resp[: k + 1] == g and all(b == B.identity for b in resp[k + 1 :]), "impulse response differs from generator", g)

    def states():
        n = len(reachable_states(table))
        _require(n == sec.S.order, f"{n} reachable states, |S| = {sec.S.order}", n)
        return f"{n} states"

    def registers():
        st = new_encoder(table)
        for x in random_inputs(sec, 50, ctx.rng):
            regs = register_view(st, x)
            b = step(st, x)
            _require(B.prod(regs) == b, "register product differs from output", (x, regs, b))

    yield _run(f"{prefix}.completeness", completeness)
    yield _run(f"{prefix}.validity", validity)
    yield _run(f"{prefix}.tracking", tracking)
    yield _run(f"{prefix}.impulse_response", impulse)
    yield _run(f"{prefix}.reachable_states", states)
    yield _run(f"{prefix}.register_view", registers)


def degradation_check(ctx: Context) -> CheckResult:
    sec = ctx.section
    ell = sec.chains.ell

    def run():
        n = 0
        if sec.B.order * sec.X0.order ** ell <= 4096:
            by_start: dict[int, list] = {}
            for p in join_paths(sec, range(sec.B.order), ell):
                by_start.setdefault(p[0], []).append(p)
            for paths in by_start.values():
                for a, b in itertools.product(paths, repeat=2):
                    degradation_profile(sec, a, b)
                    n += 1
        else:
            for _ in range(ctx.samples * 10):
                a = random_path(sec, ell + 1, ctx.rng)
                b = random_path(sec, ell + 1, ctx.rng, start=a[0])
                degradation_profile(sec, a, b)
                n += 1
        return f"{n} pairs"

    return _run("encoder.degradation_bound", run)


def encoder_suite(ctx: Context) -> Iterator[CheckResult]:
    table = representative_array(ctx.section)
    yield from encoder_checks(ctx, table, "encoder")
    yield degradation_check(ctx)


# ---------------------------------------------------------------------------
# composition refinement


def composition_suite(ctx: Context) -> Iterator[CheckResult]:
    sec = ctx.section
    B = sec.B
    ch = sec.chains

    def x_chain():
        c = x_composition_chain(sec)
        _require(c.factors() == jordan_holder_factors(B), "X composition chain factors differ from B's", c.factors())
        for (j, k), sub in c.subchains.items():
            if k >= 0:
                for s, g in enumerate(sub):
                    _require(next_set(sec, g.members) == c.term(j + 1, k - 1, s).members, f"N(X^{s}_{j},{k}) mismatch", (j, k, s))
        return f"length {len(c)}"

    def y_chain():
        c = y_composition_chain(sec)
        _require(c.factors() == jordan_holder_factors(B), "Y composition chain factors differ from B's", c.factors())
        for (k, j), sub in c.subchains.items():
            if j >= 0:
                for s, g in enumerate(sub):
                    _require(prev_set(sec, g.members) == c.term(k + 1, j - 1, s).members, f"P(Y^{s}_{k},{j}) mismatch", (k, j, s))
        return f"length {len(c)}"

    def pages():
        arr = schreier_array(sec)
        _require(chain_factors(arr.chain()) == jordan_holder_factors(B), "page matrix factors differ")
        return f"length {len(arr.chain()) - 1}"

    def solvable():
        r = solvability_equivalence(sec)
        _require(r["agree"], "B and X0 disagree on solvability", r)
        return str(r)

    def pullbacks():
        for j in range(ch.ell):
            subs = [prod(G, sec.X0) for G in _random_subgroups(ctx, ctx.samples // 10)]
            subs = [meet(G, ch.X(j + 1)) for G in subs]
            subs = [G for G in subs if sec.X0 <= G]
            for Jp, Hp in itertools.product(subs, repeat=2):
                if not Jp <= Hp:
                    continue
                J = Subgroup(B, prev_in_pletty(sec, j, Jp.members))
                H = Subgroup(B, prev_in_pletty(sec, j, Hp.members))
                _require(J <= H, "pullbacks are not nested", j)
                if is_normal(Hp, Jp):
                    _require(is_normal(H, J), "pullback loses normality", j)

    yield _run("composition.x_chain", x_chain)
    yield _run("composition.y_chain", y_chain)
    yield _run("composition.pages", pages)
    yield _run("composition.solvability", solvable)
    yield _run("composition.pullbacks", pullbacks)
    try:
        refined = refined_representative_array(sec)
    except GTrellisError as e:
        yield CheckResult("composition.refined_table", False, f"{type(e).__name__}: {e}")
        return

    def per_epoch():
        e = eta_check(refined)
        _require(e["cell_count"] == eta(B), "refined cell count differs from eta(B)", e)
        return str(e)

    yield _run("composition.refined_per_epoch", per_epoch)
    yield from table_checks(ctx, refined, "composition.refined")
    yield from encoder_checks(ctx, refined, "composition.refined_encoder")


SUITE_FUNCS = {
    "group": group_suite,
    "trellis": trellis_suite,
    "schreier": schreier_suite,
    "generators": generators_suite,
    "encoder": encoder_suite,
    "composition": composition_suite,
}


def run_suites(section: TrellisSection, names=SUITES, seed: int = 0, **kw) -> list[CheckResult]:
    """Run the named suites; a non-controllable section yields a single failed entry."""
    try:
        section.chains
    except NotControllable as e:
        return [CheckResult("trellis.controllable", False, str(e), sorted(e.stable.members))]
    ctx = Context(section, seed, **kw)
    out = [CheckResult("trellis.controllable", True, f"ell={section.chains.ell}")]
    for name in names:
        if name not in SUITE_FUNCS:
            raise ValueError(f"unknown suite {name!r}; choose from {', '.join(SUITES)}")
        out.extend(SUITE_FUNCS[name](ctx))
    return out
