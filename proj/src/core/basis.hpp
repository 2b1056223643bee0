// basis.hpp — collective spin operators, local Paulis, parity, boson ops.
#pragma once

#include "core/types.hpp"

namespace qramp {

struct CollectiveOps {
    cxmat Sx, Sy, Sz;
};

// Spin operators in the requested basis. DickeSymmetric: spin-N/2 ladder
// matrices, m = N/2 .. -N/2 along the diagonal. FullSpin: (1/2) sum of
// local Paulis. DickeBoson: symmetric-sector spin tensored with the
// boson identity (spin factor ordered first).
CollectiveOps build_collective_ops(int N, const BasisDescriptor& basis);

// Tensor-product Pauli acting on one site of the FullSpin register.
// Site 0 is the most significant bit of the computational index.
cxmat build_local_pauli(int N, int site, char axis);

// Boson ops on the (nbar+1)-dim truncated Fock space.
cxmat boson_annihilator(int nbar);
cxmat boson_number(int nbar);

// Global spin-flip parity in the given basis: product of sigma^x over
// sites (FullSpin), exp(i pi Sx) up to a phase fixed to make the matrix
// real +/-1 on parity eigenstates (DickeSymmetric), and for DickeBoson
// the spin parity tensored with boson parity (-1)^n.
cxmat parity_operator(const BasisDescriptor& basis);

// Isometry mapping DickeSymmetric(N) states into FullSpin(N); columns
// are the normalized symmetric magnetization states, m descending.
cxmat symmetric_embedding(int N);

// Kronecker helpers.
cxmat kron(const cxmat& a, const cxmat& b);

}  // namespace qramp
