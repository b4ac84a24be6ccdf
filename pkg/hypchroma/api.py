"""Command implementations behind the CLI; each returns a JSON-ready dict."""

from hypchroma import (
    bounds,
    collars,
    formulas,
    hooks,
    net_coloring,
    render,
    rotations,
    surfaces,
    validations,
    verify,
)
from hypchroma.exceptions import GeometryInfeasibleError, InvalidInputError

CONSTRUCT_KINDS = ("ideal", "truncated", "equilateral", "holed", "closed", "chain")


def cmd_bounds(d=None, genus=None):
    """Bound report for a distance d, or for a genus (optionally at a distance d)."""
    if genus is not None:
        return bounds.report_for_genus(genus, d).as_dict()
    if d is None:
        raise InvalidInputError("bounds needs --d or --genus")
    return bounds.report_for_distance(d).as_dict()


def _parse_blocks(blocks):
    parsed = []
    for entry in blocks:
        label, sep, source = entry.partition(":")
        if not sep:
            label, source = entry, entry
        if not source:
            raise InvalidInputError(f"block {entry!r} names no rotation system")
        parsed.append((label, rotations.resolve_blueprint(source)))
    return parsed


def _build(kind, n=None, d=None, t=None, blueprint=None, blocks=None, extra_genus=0, metric=True):
    if kind == "ideal":
        return surfaces.build_ideal_surface(_required(n, "--n"))
    if kind == "truncated":
        if t is not None and d is not None:
            raise InvalidInputError("truncated takes --d or --t, not both")
        if t is not None:
            return surfaces.build_truncated_surface(_required(n, "--n"), t)
        return surfaces.build_truncated_for_distance(_required(d, "--d"), n)
    if kind == "chain":
        if not blocks:
            raise InvalidInputError("chain needs --blocks")
        return surfaces.build_infinite_chain(_parse_blocks(blocks), t=t)
    rs = rotations.resolve_blueprint(_required(blueprint, "--blueprint"))
    if kind == "equilateral":
        return surfaces.build_triangle_surface(rs, metric=metric)
    if kind == "holed":
        return surfaces.build_triangle_surface(rs, mode="holed", t=t, metric=metric)
    if kind == "closed":
        F = surfaces.build_triangle_surface(rs, mode="holed", t=t, metric=metric)
        return surfaces.close_surface(F, extra_genus=extra_genus)
    raise InvalidInputError(f"unknown construction {kind!r}; use one of {', '.join(CONSTRUCT_KINDS)}")


def _required(value, flag):
    if value is None:
        raise InvalidInputError(f"missing {flag}")
    return value


def cmd_construct(kind, n=None, d=None, t=None, blueprint=None, blocks=None, extra_genus=0,
                  metric=True, depth=None, threads=None, svg=None):
    S = _build(kind, n, d, t, blueprint, blocks, extra_genus, metric)
    descriptor = surfaces.surface_to_dict(S)
    # audit what will be emitted, not the in-memory surface
    reloaded = surfaces.surface_from_dict(descriptor)
    derived = surfaces.euler(reloaded)
    certificate = surfaces.certify_clique(reloaded, depth, threads)
    if certificate.status == "failed":
        raise GeometryInfeasibleError(
            f"clique certificate failed (margin {certificate.margin})",
            details=certificate.as_dict(),
        )
    if svg:
        render.render_development(reloaded, svg)
    meta = S.construction
    clique = meta.get("lower_bound") if kind == "chain" else len(meta.get("clique_vertices", []))
    return {
        "kind": kind,
        "clique": clique,
        "edge_length": meta.get("edge_length"),
        "polygons": len(S.polygons),
        "derived": derived,
        "certificate": certificate.as_dict(),
        "surface": descriptor,
    }


def cmd_net(d, radius, seed=0, trials=10_000, r0=None, order=None, threads=None,
            timing=False, svg=None):
    validations.validate_integer(seed, "seed", minimum=0)
    result, net, coloring = net_coloring.run_net_experiment(
        d, radius, seed, trials, r0=r0, order=order, threads=threads, timing=timing
    )
    if svg:
        render.render_net(net, coloring, svg)
    return result


def cmd_verify(suite="all", depth=None, paths=(), threads=None, seeds=3):
    return verify.run_suite(suite, depth=depth, paths=paths, threads=threads, seeds=seeds)


def cmd_collar(l_gamma, d, eps=None, r0=None):
    eps = formulas.CONVEX_THINNESS if eps is None else eps
    return collars.decompose_cylinder(l_gamma, eps, d, r0).as_dict()


def cmd_search(n, seed=0, budget=None, shards=1, threads=None, out=None):
    rs = rotations.search_triangular_embedding(n, seed, budget, shards, threads)
    if rs is None:
        return {"n": n, "found": False, "seed": seed, "budget": budget or hooks.search_default_budget}
    text = rotations.dump_rotation_system(rs, comment=f"triangular embedding of K_{n}, seed {seed}")
    if out:
        with open(out, "w") as f:
            f.write(text)
    return {
        "n": n,
        "found": True,
        "seed": seed,
        **rotations.face_report(rs),
        "minimal_genus": bounds.ringel_youngs_discrepancy(n),
        "rotation": text,
    }
