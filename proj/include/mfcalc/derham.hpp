#pragma once

#include <memory>

#include "mfcalc/forms.hpp"
#include "mfcalc/groebner.hpp"

namespace mfcalc {

/// A Hochschild homology class of MF(w) in Milnor normal form:
/// parity together with g such that the class is g * dx_1 ^ ... ^ dx_n.
struct HHClass {
    int parity = 0;
    Polynomial g;
    std::shared_ptr<const MilnorData> milnor;

    bool is_zero() const { return g.is_zero(); }

    bool operator==(const HHClass& o) const { return parity == o.parity && g == o.g; }

    HHClass operator+(const HHClass& o) const {
        if (parity != o.parity && !is_zero() && !o.is_zero())
            throw Error("adding classes of different parity");
        return HHClass{is_zero() ? o.parity : parity, g + o.g, milnor ? milnor : o.milnor};
    }

    HHClass operator-() const { return HHClass{parity, -g, milnor}; }
};

/// Reduce a dw-closed mixed-degree form to its Milnor class. Closed components
/// of degree < n are discarded: they are exact because the partials of w form
/// a regular sequence. The degree-0 component must vanish identically.
inline HHClass reduce(const DifferentialForm& theta, std::shared_ptr<const MilnorData> md,
                      int parity = -1) {
    int n = md->n;
    DifferentialForm dw = DifferentialForm::d_of(md->w);
    for (int k = 0; k < n; ++k) {
        DifferentialForm part = theta.degree_part(k);
        if (part.is_zero()) continue;
        DifferentialForm obstruction = wedge(dw, part);
        if (!obstruction.is_zero())
            throw NotClosedError("component of degree " + std::to_string(k) +
                                 " is not closed under wedging with dw: " + obstruction.str());
    }
    if (!theta.degree_part(0).is_zero())
        throw NonzeroDegreeZeroError("degree-0 component " + theta.degree_part(0).str());
    Polynomial top = theta.component((1u << n) - 1);
    return HHClass{parity < 0 ? n % 2 : parity, md->nf(top), md};
}

/// Grothendieck residue: the linear functional on the Milnor ring that kills
/// basis monomials below the socle degree and sends the Hessian class to mu.
inline Rational residue(const HHClass& c) {
    const MilnorData& md = *c.milnor;
    if (!md.full) throw Error("residue needs full Milnor data");
    if (!md.ws || !md.socle_degree)
        throw UngradedError("residue needs a weight system");
    Polynomial g = md.nf(c.g);
    // coefficient of the socle monomial
    Monomial socle_mono;
    bool found = false;
    for (auto& m : md.basis)
        if (md.ws->degree(m) == *md.socle_degree) {
            socle_mono = m;
            found = true;
        }
    if (!found) throw Error("no socle monomial");
    Rational g_soc = g.coeff(socle_mono);
    Rational h_soc = md.hessian_nf.coeff(socle_mono);
    if (h_soc == 0) throw Error("hessian has no socle component");
    return g_soc * Rational(md.mu) / h_soc;
}

inline Rational pairing(const HHClass& a, const HHClass& b) {
    if (a.milnor.get() != b.milnor.get() && !(a.milnor->w == b.milnor->w))
        throw Error("pairing of classes over different potentials");
    return residue(HHClass{(a.parity + b.parity) % 2, a.milnor->nf(a.g * b.g), a.milnor});
}

} // namespace mfcalc
