# %% [markdown]
"""
# Invariant hermitian forms

A c-real matrix preserves a nondegenerate c-hermitian form ``H``:
``(T^c)^t H T = H`` with ``H^{ct} = H``.  The form is assembled block by
block from the primary decomposition and then pulled back.
"""

# %%
import random

from creal import (
    Matrix,
    Poly,
    build_hermitian_form,
    cyclic_selfdual_form,
    dual_pair_form,
    generic_form_space,
    make_field,
    skew_form,
    unipotent_char2_form,
    verify_unitary,
)
from creal.oracles import random_c_real_matrix

F4 = make_field("F4")
F9 = make_field("F9")

# %% [markdown]
"""
## Cyclic self-dual blocks

Invariance under a companion matrix makes the Gram matrix Toeplitz-like;
the free parameters are swept until the determinant is nonzero.
"""

# %%
cert = cyclic_selfdual_form(F4, Poly.parse(F4, "x^2 + x + 1"))
print(cert.H, cert.methods)

f = Poly.parse(F9, "x^2 + 1")
cert = cyclic_selfdual_form(F9, f)
print(cert.H, cert.H.det())

# %% [markdown]
"""
## Unipotent blocks in characteristic 2

The anti-triangular construction: for ``m = 3`` over F4 the entries
``w`` and ``w^2`` sit on the second anti-diagonal.
"""

# %%
for m in (1, 2, 3, 4):
    print(m, unipotent_char2_form(F4, m).H)

# %% [markdown]
"""
## Dual pairs get a hyperbolic form
"""

# %%
print(dual_pair_form(F9, Poly.parse(F9, "x - (1+i)")).H)

# %% [markdown]
"""
## Whole matrices, and the skew variant

``skew_form`` multiplies the hermitian form by an element ``w`` with
``w^c = -w``, so it needs odd characteristic.
"""

# %%
rng = random.Random(1)
T = random_c_real_matrix(F9, 4, rng)
H = build_hermitian_form(T)
print(T)
print(H.H, H.methods)
print("T preserves H:", verify_unitary(T, H.H))
print("skew:", skew_form(T).H)

# %% [markdown]
"""
## The full solution space

``generic_form_space`` solves the invariance equations directly over the
fixed field.  For a matrix that is not c-real, every member is degenerate;
for ``diag(1+i, 1+i)`` over F9 the norm of ``1+i`` is not 1, so the only
invariant form is zero and the basis is empty.
"""

# %%
space = generic_form_space(Matrix.parse(F9, "[[1+i,0];[0,1+i]]"))
print(len(space), [M.det() for M in space])
