// basis.cpp
#include "core/basis.hpp"

#include <cmath>
#include <stdexcept>

namespace qramp {

long BasisDescriptor::dim() const {
    switch (kind) {
        case Basis::DickeSymmetric: return n_spins + 1;
        case Basis::FullSpin: return 1L << n_spins;
        case Basis::DickeBoson: return static_cast<long>(n_spins + 1) * (nbar + 1);
    }
    throw std::logic_error("bad basis kind");
}

std::string BasisDescriptor::str() const {
    switch (kind) {
        case Basis::DickeSymmetric: return "DickeSymmetric(" + std::to_string(n_spins) + ")";
        case Basis::FullSpin: return "FullSpin(" + std::to_string(n_spins) + ")";
        case Basis::DickeBoson:
            return "DickeBoson(" + std::to_string(n_spins) + "," + std::to_string(nbar) + ")";
    }
    return "?";
}

BasisDescriptor dicke_symmetric(int n) { return {Basis::DickeSymmetric, n, 0}; }
BasisDescriptor full_spin(int n) { return {Basis::FullSpin, n, 0}; }
BasisDescriptor dicke_boson(int n, int nbar) { return {Basis::DickeBoson, n, nbar}; }

cxmat kron(const cxmat& a, const cxmat& b) {
    cxmat out(a.rows() * b.rows(), a.cols() * b.cols());
    for (long i = 0; i < a.rows(); ++i)
        for (long j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

namespace {

cxmat pauli(char axis) {
    cxmat s(2, 2);
    switch (axis) {
        case 'x': s << 0, 1, 1, 0; break;
        case 'y': s << 0, cxd(0, -1), cxd(0, 1), 0; break;
        case 'z': s << 1, 0, 0, -1; break;
        default: throw std::invalid_argument("pauli axis must be x, y or z");
    }
    return s;
}

// Spin-S ladder matrices, basis ordered m = S..-S.
CollectiveOps spin_matrices(int N) {
    const double S = N / 2.0;
    const long d = N + 1;
    cxmat Sp = cxmat::Zero(d, d);
    cxmat Sz = cxmat::Zero(d, d);
    for (long k = 0; k < d; ++k) {
        double m = S - k;
        Sz(k, k) = m;
        if (k > 0) Sp(k - 1, k) = std::sqrt(S * (S + 1) - m * (m + 1));
    }
    cxmat Sm = Sp.adjoint();
    CollectiveOps ops;
    ops.Sx = 0.5 * (Sp + Sm);
    ops.Sy = cxd(0, -0.5) * (Sp - Sm);
    ops.Sz = Sz;
    return ops;
}

}  // namespace

cxmat build_local_pauli(int N, int site, char axis) {
    if (site < 0 || site >= N) throw std::invalid_argument("pauli site out of range");
    cxmat s = pauli(axis);
    cxmat out = cxmat::Identity(1, 1);
    for (int i = 0; i < N; ++i)
        out = kron(out, i == site ? s : cxmat::Identity(2, 2));
    return out;
}

CollectiveOps build_collective_ops(int N, const BasisDescriptor& basis) {
    if (basis.n_spins != N) throw std::invalid_argument("basis spin count mismatch");
    switch (basis.kind) {
        case Basis::DickeSymmetric:
            return spin_matrices(N);
        case Basis::FullSpin: {
            const long d = 1L << N;
            CollectiveOps ops{cxmat::Zero(d, d), cxmat::Zero(d, d), cxmat::Zero(d, d)};
            for (int i = 0; i < N; ++i) {
                ops.Sx += 0.5 * build_local_pauli(N, i, 'x');
                ops.Sy += 0.5 * build_local_pauli(N, i, 'y');
                ops.Sz += 0.5 * build_local_pauli(N, i, 'z');
            }
            return ops;
        }
        case Basis::DickeBoson: {
            CollectiveOps spin = spin_matrices(N);
            cxmat ib = cxmat::Identity(basis.nbar + 1, basis.nbar + 1);
            return {kron(spin.Sx, ib), kron(spin.Sy, ib), kron(spin.Sz, ib)};
        }
    }
    throw std::logic_error("bad basis kind");
}

cxmat boson_annihilator(int nbar) {
    cxmat a = cxmat::Zero(nbar + 1, nbar + 1);
    for (int n = 1; n <= nbar; ++n) a(n - 1, n) = std::sqrt(double(n));
    return a;
}

cxmat boson_number(int nbar) {
    cxmat n = cxmat::Zero(nbar + 1, nbar + 1);
    for (int k = 0; k <= nbar; ++k) n(k, k) = k;
    return n;
}

cxmat parity_operator(const BasisDescriptor& basis) {
    const int N = basis.n_spins;
    switch (basis.kind) {
        case Basis::FullSpin: {
            const long d = 1L << N;
            cxmat P = cxmat::Zero(d, d);
            for (long a = 0; a < d; ++a) P(a ^ (d - 1), a) = 1.0;  // flip all bits
            return P;
        }
        case Basis::DickeSymmetric: {
            // The FullSpin flip restricted to the symmetric sector sends
            // |m> -> |-m> with coefficient +1: a plain antidiagonal.
            const long d = N + 1;
            cxmat P = cxmat::Zero(d, d);
            for (long k = 0; k < d; ++k) P(d - 1 - k, k) = 1.0;
            return P;
        }
        case Basis::DickeBoson: {
            BasisDescriptor spin = dicke_symmetric(N);
            cxmat Ps = parity_operator(spin);
            cxmat Pb = cxmat::Zero(basis.nbar + 1, basis.nbar + 1);
            for (int n = 0; n <= basis.nbar; ++n) Pb(n, n) = (n % 2 == 0) ? 1.0 : -1.0;
            return kron(Ps, Pb);
        }
    }
    throw std::logic_error("bad basis kind");
}

cxmat symmetric_embedding(int N) {
    const long d = 1L << N;
    cxmat E = cxmat::Zero(d, N + 1);
    std::vector<double> binom(N + 1);
    binom[0] = 1.0;
    for (int k = 1; k <= N; ++k) binom[k] = binom[k - 1] * (N - k + 1) / k;
    for (long a = 0; a < d; ++a) {
        int k = __builtin_popcountll(a);  // number of down spins; m = N/2 - k
        E(a, k) = 1.0 / std::sqrt(binom[k]);
    }
    return E;
}

}  // namespace qramp
