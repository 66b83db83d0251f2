"""2-monads on finite categories, given pointwise.

A monad here supplies T on categories, functors and transformations, the unit
i_A: A → TA, the multiplication m_A: TTA → TA and, for lax idempotent ones,
the modification δ_A: T(i_A) ⇒ i_{TA}.
"""
from __future__ import annotations

from .fincat.core import FinCategory, Functor, NatTrans, identity_functor, identity_nat, post, pre
from .report import Report


class TwoMonad:
    name = "monad"

    def apply(self, A: FinCategory) -> FinCategory:
        raise NotImplementedError

    def unit(self, A: FinCategory) -> Functor:
        raise NotImplementedError

    def mult(self, A: FinCategory) -> Functor:
        raise NotImplementedError

    def on_functor(self, F: Functor) -> Functor:
        raise NotImplementedError

    def on_nat(self, alpha: NatTrans) -> NatTrans:
        raise NotImplementedError

    def delta(self, A: FinCategory) -> NatTrans:
        raise NotImplementedError


class IdentityMonad(TwoMonad):
    name = "identity"

    def apply(self, A):
        return A

    def unit(self, A):
        return identity_functor(A)

    def mult(self, A):
        return identity_functor(A)

    def on_functor(self, F):
        return F

    def on_nat(self, alpha):
        return alpha

    def delta(self, A):
        return identity_nat(identity_functor(A))


IDENTITY = IdentityMonad()


def check_two_monad(T: TwoMonad, categories, functors=(), cells=()) -> Report:
    """Unit and associativity laws at each category, strict naturality of i
    and m along the supplied functors, and 2-functoriality of T."""
    rep = Report(f"2-monad laws [{T.name}]")
    for A in categories:
        iA, mA = T.unit(A), T.mult(A)
        one = identity_functor(T.apply(A))
        rep.add("m∘iT = 1", A.name, mA @ T.unit(T.apply(A)) == one)
        rep.add("m∘T(i) = 1", A.name, mA @ T.on_functor(iA) == one)
        rep.add("m∘mT = m∘T(m)", A.name, mA @ T.mult(T.apply(A)) == mA @ T.on_functor(mA))
        rep.add("T(1) = 1", A.name, T.on_functor(identity_functor(A)) == one)
    for F in functors:
        A, B = F.source, F.target
        TF = T.on_functor(F)
        rep.add("i natural", F.label(), TF @ T.unit(A) == T.unit(B) @ F)
        rep.add("m natural", F.label(), TF @ T.mult(A) == T.mult(B) @ T.on_functor(TF))
    fs = list(functors)
    for F in fs:
        for G in fs:
            if F.target == G.source:
                rep.add("T(G∘F) = TG∘TF", f"{G.label()}∘{F.label()}", T.on_functor(G @ F) == T.on_functor(G) @ T.on_functor(F))
    for a in cells:
        Ta = T.on_nat(a)
        rep.add("T on 2-cells", repr(a.components()), Ta.source == T.on_functor(a.source) and Ta.target == T.on_functor(a.target))
        rep.add("i·α = Tα·i", repr(a.components()), pre(Ta, T.unit(a.category)) == post(T.unit(a.target.target), a))
    return rep
