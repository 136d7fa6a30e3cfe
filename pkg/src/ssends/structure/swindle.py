"""The swindle: f supported on U_0 is the commutator [f^, phi^-1]."""
from __future__ import annotations

from ..homeo.maps import LazyHomeo, commutator, inverse
from .halfspace import is_supported_on
from .standard_form import StandardForm


class SupportViolation(ValueError):
    pass


class SwindleProduct(LazyHomeo):
    """f^ = prod_{i>=0} phi^-i f phi^i.

    On U_{-2i} it acts as iso_{-2i} f iso_{-2i}^-1 (phi^i restricted to U_{-2i}
    telescopes to iso_{-2i}^-1); everywhere else it is the identity, and y is fixed.
    """

    kind = "swindle_product"

    def __init__(self, sf: StandardForm, f: LazyHomeo):
        super().__init__(sf.model)
        self.sf = sf
        self.f = f

    def _query(self, c, forward: bool):
        sf, m = self.sf, self.model
        i = sf.locate(c)
        if i is not None:
            if i > 0 or i % 2:
                return frozenset({c})
            iso = sf.iso(i)
            inner = iso.preimage(frozenset({c}))
            inner = self.f.image(inner) if forward else self.f.preimage(inner)
            return iso.image(inner)
        step = self.image if forward else self.preimage
        if sf.y.in_cell(c):
            tail = sf.tail_y(sf.y_tail_index(c))
        elif sf.z.in_cell(c):
            tail = sf.tail_z(sf.z_tail_index(c))
        else:
            return step(m.children(c))
        return m.join(tail, step(m.minus(frozenset({c}), tail)))

    def _image_cell(self, c):
        return self._query(c, True)

    def _preimage_cell(self, c):
        return self._query(c, False)


def check_supported_on_u0(sf: StandardForm, f: LazyHomeo, depth: int):
    u0 = sf.U(0)
    if f.image(u0) != u0 or not is_supported_on(f, u0, depth):
        raise SupportViolation("map is not supported on U_0")


def swindle_hat(f: LazyHomeo, sf: StandardForm, depth: int = 8) -> LazyHomeo:
    check_supported_on_u0(sf, f, depth)
    return SwindleProduct(sf, f)


def swindle_commutator(fhat: LazyHomeo, sf: StandardForm) -> LazyHomeo:
    """[f^, phi^-1]."""
    return commutator(fhat, inverse(sf.phi))
