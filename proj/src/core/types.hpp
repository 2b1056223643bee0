// types.hpp — shared aliases and basic descriptors for the qramp core.
#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <string>
#include <vector>

namespace qramp {

using cxd = std::complex<double>;
using cxmat = Eigen::MatrixXcd;
using cxvec = Eigen::VectorXcd;
using dvec = Eigen::VectorXd;
using dmat = Eigen::MatrixXd;

enum class Basis { DickeSymmetric, FullSpin, DickeBoson };

// Identifies the Hilbert space a matrix or state lives in.
struct BasisDescriptor {
    Basis kind = Basis::DickeSymmetric;
    int n_spins = 1;
    int nbar = 0;  // boson cutoff, DickeBoson only

    long dim() const;
    bool operator==(const BasisDescriptor& o) const = default;
    std::string str() const;
};

BasisDescriptor dicke_symmetric(int n);
BasisDescriptor full_spin(int n);
BasisDescriptor dicke_boson(int n, int nbar);

enum class Variant { Lipkin, Ising, Dicke };
enum class DephasingAxis { Z, X };

// Declarative model description. Energies and fields are angular
// frequencies in rad/ms; gamma is kept in 1/s and converted on use.
struct ModelSpec {
    Variant variant = Variant::Lipkin;
    int N = 6;
    double J = 3.3;              // Lipkin coupling magnitude, rad/ms
    double Jmax = 0.55;          // Ising nearest-pair coupling magnitude, rad/ms
    double alpha = 0.0;          // Ising power-law exponent
    double g0 = 0.0;             // Dicke spin-boson coupling, rad/ms
    double delta = 0.0;          // Dicke detuning, rad/ms (negative: ferromagnetic)
    int nbar = 10;               // Dicke boson cutoff
    double dd_omega = 0.0;       // decoupling amplitude, rad/ms
    double dd_alpha_tilde = 0.0; // Ising DD interaction exponent
    double B0 = 7.0;             // initial field, rad/ms
    double gamma = 0.0;          // dephasing rate, 1/s
    bool ferromagnetic = true;

    DephasingAxis dephasing_axis() const {
        return variant == Variant::Ising ? DephasingAxis::X : DephasingAxis::Z;
    }
    double signed_J() const { return ferromagnetic ? -J : J; }
    double signed_Jmax() const { return ferromagnetic ? -Jmax : Jmax; }
    double gamma_per_ms() const { return gamma * 1e-3; }
    void validate() const;  // throws std::invalid_argument on bad fields
    std::uint64_t hash() const;
};

}  // namespace qramp
