// model.cpp
#include "core/model.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace qramp {

void ModelSpec::validate() const {
    if (N < 1) throw std::invalid_argument("ModelSpec: N must be >= 1");
    if (nbar < 0) throw std::invalid_argument("ModelSpec: nbar must be >= 0");
    if (gamma < 0) throw std::invalid_argument("ModelSpec: gamma must be >= 0");
    if (dd_omega < 0) throw std::invalid_argument("ModelSpec: dd_omega must be >= 0");
    if (!(B0 > 0)) throw std::invalid_argument("ModelSpec: B0 must be > 0");
    if (variant == Variant::Ising && alpha < 0)
        throw std::invalid_argument("ModelSpec: alpha must be >= 0");
    if (variant == Variant::Dicke && delta == 0)
        throw std::invalid_argument("ModelSpec: Dicke requires nonzero delta");
}

std::uint64_t ModelSpec::hash() const {
    std::ostringstream os;
    os << int(variant) << '|' << N << '|' << J << '|' << Jmax << '|' << alpha << '|' << g0 << '|'
       << delta << '|' << nbar << '|' << dd_omega << '|' << dd_alpha_tilde << '|' << B0 << '|'
       << gamma << '|' << ferromagnetic;
    std::uint64_t h = 14695981039346656037ULL;  // FNV-1a 64
    for (unsigned char c : os.str()) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

BasisDescriptor design_basis(const ModelSpec& spec) {
    switch (spec.variant) {
        case Variant::Lipkin: return dicke_symmetric(spec.N);
        case Variant::Ising: return full_spin(spec.N);
        case Variant::Dicke: return dicke_boson(spec.N, spec.nbar);
    }
    throw std::logic_error("bad variant");
}

BasisDescriptor open_basis(const ModelSpec& spec) {
    switch (spec.variant) {
        case Variant::Lipkin:
        case Variant::Ising: return full_spin(spec.N);
        case Variant::Dicke:
            throw std::invalid_argument("open Dicke evolution is not supported");
    }
    throw std::logic_error("bad variant");
}

Model::Model(const ModelSpec& spec, const BasisDescriptor& basis) : spec_(spec), basis_(basis) {
    spec.validate();
    const int N = spec.N;
    if (basis.n_spins != N) throw std::invalid_argument("Model: basis spin count mismatch");

    switch (spec.variant) {
        case Variant::Lipkin: {
            if (basis.kind == Basis::DickeBoson)
                throw std::invalid_argument("Lipkin model needs a spin-only basis");
            CollectiveOps S = build_collective_ops(N, basis);
            double Jsigned = spec.signed_J();
            Hstatic_ = (Jsigned / N) * (S.Sz * S.Sz);
            Hdrive_ = S.Sx;
            Hdd_ = S.Sy * S.Sy;
            parity_ = parity_operator(basis);
            break;
        }
        case Variant::Ising: {
            if (basis.kind != Basis::FullSpin)
                throw std::invalid_argument("Ising model needs the FullSpin basis");
            const long d = basis.dim();
            double Jsigned = spec.signed_Jmax();
            Hstatic_ = cxmat::Zero(d, d);
            Hdd_ = cxmat::Zero(d, d);
            std::vector<cxmat> sx(N), sy(N), sz(N);
            for (int i = 0; i < N; ++i) {
                sx[i] = build_local_pauli(N, i, 'x');
                sy[i] = build_local_pauli(N, i, 'y');
                sz[i] = build_local_pauli(N, i, 'z');
            }
            for (int i = 0; i < N; ++i)
                for (int j = i + 1; j < N; ++j) {
                    double r = double(j - i);
                    Hstatic_ += (Jsigned / std::pow(r, spec.alpha)) * (sx[i] * sx[j]);
                    Hdd_ += (1.0 / std::pow(r, spec.dd_alpha_tilde)) * (sz[i] * sz[j]);
                }
            Hdrive_ = cxmat::Zero(d, d);
            for (int i = 0; i < N; ++i) Hdrive_ += sy[i];
            // Global y-flip: sx -> -sx, sz -> -sz pairwise invariant.
            parity_ = cxmat::Identity(1, 1);
            for (int i = 0; i < N; ++i) {
                cxmat sy1(2, 2);
                sy1 << 0, cxd(0, -1), cxd(0, 1), 0;
                parity_ = kron(parity_, sy1);
            }
            break;
        }
        case Variant::Dicke: {
            if (basis.kind != Basis::DickeBoson)
                throw std::invalid_argument("Dicke model needs the DickeBoson basis");
            CollectiveOps S = build_collective_ops(N, basis);
            cxmat a = kron(cxmat::Identity(N + 1, N + 1), boson_annihilator(spec.nbar));
            cxmat num = kron(cxmat::Identity(N + 1, N + 1), boson_number(spec.nbar));
            Hstatic_ = (-spec.g0 / std::sqrt(double(N))) * ((a + a.adjoint()) * S.Sz)
                       - spec.delta * num;
            Hdrive_ = S.Sx;
            Hdd_ = S.Sy * S.Sy;
            parity_ = parity_operator(basis);
            break;
        }
    }
}

cxmat Model::hamiltonian(double B, double env) const {
    cxmat H = Hstatic_ + B * Hdrive_;
    if (spec_.dd_omega != 0.0 && env != 0.0) H += (spec_.dd_omega * env) * Hdd_;
    return H;
}

}  // namespace qramp
