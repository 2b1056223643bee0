// model.hpp — Hamiltonian assembly for the Lipkin / Ising / Dicke variants.
#pragma once

#include "core/basis.hpp"
#include "core/types.hpp"

namespace qramp {

// Caches the B-independent operator pieces of a model in a fixed basis:
//   H(B, env) = Hstatic + B * Hdrive + dd_omega * env * Hdd
// where env is the decoupling envelope value sin(pi t / t_f) in [0, 1].
class Model {
  public:
    Model(const ModelSpec& spec, const BasisDescriptor& basis);

    cxmat hamiltonian(double B, double env = 0.0) const;
    const cxmat& drive() const { return Hdrive_; }   // dH/dB
    const cxmat& parity() const { return parity_; }  // commutes with H at all B
    const ModelSpec& spec() const { return spec_; }
    const BasisDescriptor& basis() const { return basis_; }
    long dim() const { return basis_.dim(); }

  private:
    ModelSpec spec_;
    BasisDescriptor basis_;
    cxmat Hstatic_, Hdrive_, Hdd_, parity_;
};

// Basis the closed-system (schedule design) path uses by default.
BasisDescriptor design_basis(const ModelSpec& spec);
// Basis required for local-dephasing Lindblad evolution.
BasisDescriptor open_basis(const ModelSpec& spec);

}  // namespace qramp
