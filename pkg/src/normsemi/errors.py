"""Exception hierarchy.

Two families matter to callers (and to the CLI exit codes):

* :class:`InputError` -- the input itself is malformed (bad JSON, a
  rational with zero denominator, out-of-range table entry, ...).
* :class:`AxiomError` -- the input is well formed but some algebraic axiom
  or inequality fails.  These always carry a ``witness`` dict naming the
  offending elements.

:class:`ConsistencyError` is raised when two routes that must agree do not
(e.g. two characterizations of the natural order).  It signals a bug, not
bad input.
"""


class NormSemiError(Exception):
    pass


class InputError(NormSemiError, ValueError):
    """The input is malformed."""


class TooLarge(InputError):
    """The requested structure exceeds the tabulation limit."""


class BadParams(InputError):
    """Unknown family, fixture or parameter."""


class AxiomError(NormSemiError):
    def __init__(self, message, **witness):
        super().__init__(message)
        self.witness = witness

    @property
    def kind(self):
        return type(self).__name__


class ConsistencyError(AxiomError, AssertionError):
    pass


# algebra
class NotAssociative(AxiomError):
    """(x+y)+z differs from x+(y+z)."""


class NotInverse(AxiomError):
    """Some element has no inverse, or more than one."""


class IdempotentsDontCommute(AxiomError):
    """Two idempotents e, f with e+f != f+e."""


class NotIdempotent(AxiomError):
    """An element passed as idempotent is not one."""


class NotClifford(AxiomError):
    """Some x has x+x* != x*+x."""


class NoIdentity(AxiomError):
    """The construction needs a monoid."""


# pair-maps / partial metrics / interlaced spaces
class NotSymmetric(AxiomError):
    """p(x, y) != p(y, x)."""


class NotSubmodular(AxiomError):
    """p(x, y) + p(z, z) > p(x, z) + p(z, y)."""


class DiagonalNotDominated(AxiomError):
    """p(x, x) > p(x, y)."""


class NegativeSelfDistance(AxiomError):
    """p(x, x) < 0."""


class DiagonalMismatch(AxiomError):
    """p and q differ on the diagonal."""


class NoAdmissibleK(DiagonalMismatch):
    """No linking constant k makes (p, q) interlaced."""


class PreconditionViolated(AxiomError):
    """An operation was applied outside its hypotheses."""


class PreconditionDiagNotDominated(PreconditionViolated):
    """w(x) v w(y) > p(x, y), so the transform is not defined."""


class NoUpperBound(AxiomError):
    """Two points have no common upper bound."""


# norms / bridge
class NotPseudoNorm(AxiomError):
    """A pseudo-norm axiom fails."""


class NotRightSubinvariant(AxiomError):
    """d(x+y*, z+y*) > d(x, z)."""


class NotSkewConvex(AxiomError):
    """A skew-convexity axiom fails."""
