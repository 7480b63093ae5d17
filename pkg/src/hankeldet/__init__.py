"""hankeldet: determinants of Hankel integral operators and friends.

Subpackages/modules:

* ``specfun``      complex gamma, pFq, Chebyshev/Laguerre/Struve/Bessel
* ``symbols``      strip symbols, winding numbers, Wiener-Hopf factorization
* ``hankel``       Hankel operators: Nystrom discretization, moments, norms
* ``barnes``       residue expansions of scattering functions, Meijer G
* ``determinants`` Fredholm/Carleman determinants and determinant identities
* ``orthopoly``    moment weights, orthogonal-polynomial ladders, CD kernels
* ``equilibrium``  equilibrium measures and linear-statistic mean/variance
* ``cli``          command-line front end (``hankeldet`` entry point)
"""

__version__ = "0.1.0"
