#include "qnm/operators.hpp"

#include <bit>
#include <string>

#include "qnm/errors.hpp"

namespace qnm {

int Operator::support_size() const { return std::popcount(support); }

CMat sigma_x() {
    CMat m(2, 2);
    m(0, 1) = 1.0;
    m(1, 0) = 1.0;
    return m;
}

CMat sigma_y() {
    CMat m(2, 2);
    m(0, 1) = cplx(0.0, -1.0);
    m(1, 0) = cplx(0.0, 1.0);
    return m;
}

CMat sigma_z() {
    CMat m(2, 2);
    m(0, 0) = 1.0;
    m(1, 1) = -1.0;
    return m;
}

CMat sigma_plus() {
    CMat m(2, 2);
    m(0, 1) = 1.0;
    return m;
}

CMat sigma_minus() {
    CMat m(2, 2);
    m(1, 0) = 1.0;
    return m;
}

Operator pauli(std::string_view spec) {
    Operator op;
    op.nqubits = static_cast<int>(spec.size());
    op.mat = CMat::identity(1);
    for (std::size_t i = 0; i < spec.size(); ++i) {
        CMat factor;
        switch (spec[i]) {
            case 'I': factor = CMat::identity(2); break;
            case 'X': factor = sigma_x(); break;
            case 'Y': factor = sigma_y(); break;
            case 'Z': factor = sigma_z(); break;
            default:
                throw numeric_rejection("pauli: invalid character '" + std::string(1, spec[i]) +
                                        "' at position " + std::to_string(i));
        }
        if (spec[i] != 'I') op.support |= (1u << i);
        op.mat = CMat::kron(op.mat, factor);
    }
    return op;
}

Operator embed(const CMat& local, const std::vector<int>& qubits, int n) {
    const std::size_t k = qubits.size();
    if (local.rows() != (std::size_t{1} << k))
        throw numeric_rejection("embed: local dimension does not match qubit count");
    const std::size_t dim = std::size_t{1} << n;
    Operator op;
    op.nqubits = n;
    op.mat = CMat(dim, dim);
    for (int q : qubits) {
        if (q < 0 || q >= n) throw numeric_rejection("embed: qubit index out of range");
        op.support |= (1u << q);
    }
    // Bit i of a register index = qubit i, qubit 0 most significant.
    auto local_bits = [&](std::size_t idx) {
        std::size_t out = 0;
        for (std::size_t j = 0; j < k; ++j) {
            const int shift = n - 1 - qubits[j];
            out = (out << 1) | ((idx >> shift) & 1u);
        }
        return out;
    };
    std::uint32_t qubit_bits = 0;
    for (int q : qubits) qubit_bits |= (1u << (n - 1 - q));
    const std::uint32_t rest_mask = static_cast<std::uint32_t>(dim - 1) & ~qubit_bits;
    for (std::size_t i = 0; i < dim; ++i) {
        for (std::size_t j = 0; j < dim; ++j) {
            if ((i & rest_mask) != (j & rest_mask)) continue;
            op.mat(i, j) = local(local_bits(i), local_bits(j));
        }
    }
    return op;
}

CMat partial_trace(const CMat& m, int n, std::uint32_t keep_mask) {
    const std::size_t dim = std::size_t{1} << n;
    if (m.rows() != dim) throw numeric_rejection("partial_trace: dimension mismatch");
    std::vector<int> keep, drop;
    for (int q = 0; q < n; ++q) (keep_mask & (1u << q) ? keep : drop).push_back(q);
    const std::size_t kd = std::size_t{1} << keep.size();
    const std::size_t dd = std::size_t{1} << drop.size();
    auto compose = [&](std::size_t keep_bits, std::size_t drop_bits) {
        std::size_t idx = 0;
        for (std::size_t j = 0; j < keep.size(); ++j)
            idx |= ((keep_bits >> (keep.size() - 1 - j)) & 1u) << (n - 1 - keep[j]);
        for (std::size_t j = 0; j < drop.size(); ++j)
            idx |= ((drop_bits >> (drop.size() - 1 - j)) & 1u) << (n - 1 - drop[j]);
        return idx;
    };
    CMat out(kd, kd);
    for (std::size_t a = 0; a < kd; ++a)
        for (std::size_t b = 0; b < kd; ++b) {
            cplx s{};
            for (std::size_t e = 0; e < dd; ++e) s += m(compose(a, e), compose(b, e));
            out(a, b) = s;
        }
    return out;
}

}  // namespace qnm
