#pragma once
// n-qubit operators with declared support (n <= 4, dense).

#include <cstdint>
#include <string_view>

#include "qnm/cmat.hpp"

namespace qnm {

struct Operator {
    CMat mat;
    std::uint32_t support = 0;  // bit i set: acts nontrivially on qubit i
    int nqubits = 0;

    std::size_t dim() const { return mat.rows(); }
    int support_size() const;
};

// Single-qubit matrices; basis |0> = upper level, sigma_z = diag(1,-1).
CMat sigma_x();
CMat sigma_y();
CMat sigma_z();
CMat sigma_plus();   // |0><1|
CMat sigma_minus();  // |1><0|

// Tensor product of single-qubit Paulis from a string like "XIZ"
// (qubit 0 = leftmost character). Rejects invalid characters with position.
Operator pauli(std::string_view spec);

// Places a 2^k-dim matrix on the given qubits of an n-qubit register
// (identity elsewhere). `qubits` lists register positions for the local
// factors in order.
Operator embed(const CMat& local, const std::vector<int>& qubits, int n);

// Traces out qubits NOT in keep_mask; result dim 2^{popcount(keep_mask)}.
CMat partial_trace(const CMat& m, int n, std::uint32_t keep_mask);

}  // namespace qnm
