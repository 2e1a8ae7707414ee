"""First-order unification of terms

Only named variables (`Var`) can be bound; every other node must agree
structurally. Used to find overlaps between rule left-hand sides and between
ground right-hand sides and left-hand sides.

Contains the following functions:
    * unify
    * rename_apart

"""

from typing import Optional

from terms.term import (
    FRESH_SEPARATOR,
    App,
    Abs,
    Prod,
    Substitution,
    Term,
    Var,
    free_vars,
    subst,
)


def _walk(t: Term, sigma: Substitution) -> Term:
    while isinstance(t, Var) and t.name in sigma:
        t = sigma[t.name]
    return t


def _resolve(t: Term, sigma: Substitution) -> Term:
    # apply a triangular substitution until no bound variable remains
    while free_vars(t) & sigma.keys():
        t = subst(t, sigma)
    return t


def unify(t: Term, u: Term) -> Optional[Substitution]:
    """Computes a most general unifier of `t` and `u`

    Args:
        t (Term): First term.
        u (Term): Second term.

    Returns:
        dict: idempotent substitution σ with tσ = uσ, or None if the terms do
            not unify (symbol clash or occurs-check failure)

    """
    sigma: Substitution = {}
    pending = [(t, u)]

    while pending:
        left, right = pending.pop()
        left, right = _walk(left, sigma), _walk(right, sigma)

        if left == right:
            continue

        if isinstance(right, Var) and not isinstance(left, Var):
            left, right = right, left

        if isinstance(left, Var):
            if left.name in free_vars(_resolve(right, sigma)):
                return None
            sigma[left.name] = right
            continue

        match left, right:
            case App(lhead, larg), App(rhead, rarg):
                pending += [(lhead, rhead), (larg, rarg)]
            case (Abs(ldom, lbody, _), Abs(rdom, rbody, _)) | (
                Prod(ldom, lbody, _),
                Prod(rdom, rbody, _),
            ):
                pending += [(ldom, rdom), (lbody, rbody)]
            case _:
                return None

    return {name: _resolve(image, sigma) for name, image in sigma.items()}


def rename_apart(t: Term, tag: str) -> Term:
    """Renames every free variable `x` of `t` to `x#tag`"""
    renaming = {name: Var(f"{name}{FRESH_SEPARATOR}{tag}") for name in free_vars(t)}
    return subst(t, renaming)
