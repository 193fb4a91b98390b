"""Definition-level checks that quantify over open sets directly.

These deliberately avoid the minimal-neighbourhood shortcuts used in
:mod:`gyrolab.continuity`, so the two can be compared, and counterexamples
can be re-verified along an independent path.
"""

from __future__ import annotations

import itertools

from .finite import FiniteGyrogroup
from .topology import FiniteTopology, members


def _img(G, A, B):
    return {G.table[a][b] for a in A for b in B}


def _opens(tau):
    return [frozenset(members(U)) for U in sorted(tau.opens)]


def paratopological_by_opens(G: FiniteGyrogroup, tau: FiniteTopology) -> bool:
    """For each open W and a⊕b ∈ W there are opens U ∋ a, V ∋ b with U⊕V ⊆ W."""
    opens = _opens(tau)
    for W in opens:
        for a, b in itertools.product(range(G.order), repeat=2):
            if G.table[a][b] not in W:
                continue
            if not any(a in U and b in V and _img(G, U, V) <= W
                       for U in opens for V in opens):
                return False
    return True


def inverse_continuous_by_preimages(G: FiniteGyrogroup, tau: FiniteTopology) -> bool:
    """The preimage of every open set under ⊖ is open."""
    opens = set(_opens(tau))
    return all(frozenset(G.inverse[x] for x in W) in opens for W in opens)


def strongly_by_base(G: FiniteGyrogroup, tau: FiniteTopology) -> bool:
    """Some neighbourhood base at 0 consists of gyration-invariant opens.

    Any such base lies inside the family of all invariant open neighbourhoods
    of 0, so it is enough to ask whether that family is itself a base.
    """
    n = G.order
    nbhds = [U for U in _opens(tau) if 0 in U]
    invariant = [U for U in nbhds
                 if all(G.set_gyr(a, b, U) == U for a in range(n) for b in range(n))]
    return all(any(V <= W for V in invariant) for W in nbhds)


def gyrocommutative_direct(G: FiniteGyrogroup) -> bool:
    T, N, n = G.table, G.inverse, G.order

    def gyr(a, b, c):
        return T[N[T[a][b]]][T[a][T[b][c]]]

    return all(T[a][b] == gyr(a, b, T[b][a]) for a in range(n) for b in range(n))
