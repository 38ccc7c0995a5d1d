"""Shared test fixtures: canonical small instances of every catalog family."""

from sphelim.rootdata import FAMILIES, SpaceDatum, build_space


def small_instances() -> list[SpaceDatum]:
    """One modest-rank member of each of the thirteen catalog rows."""
    return [
        build_space("group-su", n=4),
        build_space("group-spin-odd", n=3),
        build_space("group-spin-even", n=4),
        build_space("group-sp", n=3),
        build_space("grass-complex", p=2, q=5),
        build_space("su-over-so", n=4),
        build_space("su-over-sp", n=3),
        build_space("grass-real", p=3, q=5),
        build_space("so-over-u-even", n=3),
        build_space("so-over-u-odd", n=3),
        build_space("grass-quaternion", p=2, q=4),
        build_space("sp-over-u", n=4),
        build_space("rank1-real", q=5),
    ]


def instances_at_rank(rank: int, q_offset: int = 1) -> list[SpaceDatum]:
    """Every catalog row that admits the given rank, one instance each.

    Grassmannian rows are taken at q = p + q_offset; single-parameter rows
    at whichever n realizes the rank.  Rows whose rank floor exceeds
    ``rank`` (D needs rank >= 4, rank1-real is rank 1 only) are skipped.
    """
    out = []
    for fam in FAMILIES.values():
        if fam.param_kind == "pq":
            p = fam.fixed_p if fam.fixed_p is not None else rank
            if fam.rank_of(p, p + q_offset) != rank:
                continue
            out.append(build_space(fam.slug, p=p, q=p + q_offset))
        else:
            for n in (rank, rank + 1):
                if n >= fam.min_n and fam.rank_of(n) == rank:
                    out.append(build_space(fam.slug, n=n))
                    break
    return out
