# %% [markdown]
"""
# Deciding c-reality

An invertible matrix ``T`` over a field ``F`` with involution ``c`` is
*c-real* when it is conjugate to ``(T^c)^{-1}``.  This script walks through
the decision and the certificates over small finite fields.
"""

# %%
from creal import (
    Matrix,
    NotCReal,
    Poly,
    build_conjugator,
    companion,
    dual,
    duality_pairing,
    elementary_divisors,
    is_c_real,
    make_field,
)

F4 = make_field("F4")
F9 = make_field("F9")
print(F4.w_def())

# %% [markdown]
"""
## Dual polynomials

``dual(f)`` sends every root ``a`` to ``(a^c)^{-1}``.  Over F9 the root
``1+i`` goes to ``2+2i``; over F4 the root ``w`` is fixed because
``w^c = w^2`` and ``w^3 = 1``.
"""

# %%
print(dual(Poly.parse(F9, "x - (1+i)")))
print(dual(Poly.parse(F4, "x + w")))

# %% [markdown]
"""
## A c-real matrix and its conjugator

The companion matrix of ``x^2 + x + 1`` over F4 is conjugated to its
``(T^c)^{-1}`` by the antidiagonal permutation.
"""

# %%
T = companion(Poly.parse(F4, "x^2 + x + 1"))
print(T)
print([str(e) for e in elementary_divisors(T)])
cert = build_conjugator(T)
print(cert.S, cert.per_block_method)
assert cert.S @ T @ cert.S.inv() == T.conj().inv()

# %% [markdown]
"""
## Dual pairs

``diag(1+i, 2+2i)`` over F9 has two non-self-dual divisors that are duals
of one another; the conjugator swaps the two blocks.
"""

# %%
T = Matrix.parse(F9, "[[1+i,0];[0,2+2*i]]")
pairing = duality_pairing(T)
print("\n".join(pairing.lines()))
print(build_conjugator(T).S)

# %% [markdown]
"""
## A matrix that is not c-real

``diag(1+i, 1+i)``: the dual eigenvalue ``2+2i`` never appears.  The
failure carries the unpaired divisor as a witness.
"""

# %%
T = Matrix.parse(F9, "[[1+i,0];[0,1+i]]")
print(is_c_real(T))
try:
    duality_pairing(T)
except NotCReal as exc:
    print("not c-real:", exc)

# %% [markdown]
"""
## Decision without factorization

Over ``Q(i)`` the decision compares invariant factors of ``T`` and
``(T^c)^{-1}`` only, so no polynomial factorization is required.
"""

# %%
Qi = make_field("Qi")
print(is_c_real(Matrix.parse(Qi, "[[1+i,1,0];[0,1/2+1/2*i,0];[0,0,-1]]")))
print(is_c_real(Matrix.parse(Qi, "[[1+i,0];[0,1+i]]")))
