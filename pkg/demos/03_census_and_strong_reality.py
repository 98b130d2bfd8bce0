# %% [markdown]
"""
# Census of small groups and strong reality

Every element of GL_2(F4) is run through each decision path (invariant
factors, divisor pairing, form construction, brute-force conjugacy search,
brute-force form search).  The census also records whether an involutory
conjugator exists.
"""

# %%
from creal import Matrix, census, make_field, strong_conjugator
from creal.oracles import involutory_conjugators

F4 = make_field("F4")
rep = census(F4, 2)
print(rep.table())

# %% [markdown]
"""
## Involutory conjugators

Only some c-real elements admit a conjugator ``S`` with ``S^2 = I``.  For
``[[1,0];[w,1]]`` the exhaustive count of involutory conjugators is zero,
while the conjugator found does satisfy ``S^c S = I``.
"""

# %%
T = Matrix.parse(F4, "[[1,0];[w,1]]")
print("involutory conjugators:", involutory_conjugators(T))
cert = strong_conjugator(T)
print(cert.S, cert.is_involution, cert.report)
print("S^c S = I:", cert.conj_inverse_identity)

# %% [markdown]
"""
## One representative per class

The class mode walks invariant-factor chains instead of elements, which
covers GL_3(F4) (181440 elements) in seconds.
"""

# %%
print(census(F4, 2, mode="classes").table())
