#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "hsg/common.hpp"

namespace hsg {

// Sparse row-major matrix of exact unsigned 64-bit counts. All arithmetic is
// overflow-checked; overflow raises NumericError tagged with `context`.
struct CsrU64 {
    long rows = 0;
    long cols = 0;
    std::vector<long> row_ptr;  // rows+1
    std::vector<long> col;      // sorted within each row
    std::vector<std::uint64_t> val;

    long nnz() const { return static_cast<long>(col.size()); }
    double density() const {
        return rows == 0 || cols == 0 ? 0.0
                                      : static_cast<double>(nnz()) / (static_cast<double>(rows) * cols);
    }
    std::uint64_t at(long r, long c) const;

    static CsrU64 zero(long rows, long cols);
    // Triplets may contain duplicates; duplicate values are summed (checked).
    static CsrU64 from_triplets(long rows, long cols,
                                std::vector<std::tuple<long, long, std::uint64_t>> triplets,
                                const std::string& context = "");
};

CsrU64 transpose(const CsrU64& a);

// Exact product. Uses Gustavson's algorithm on sparse operands; switches to a
// dense accumulation path when either factor has density above
// kDensifyThreshold. Overflow raises NumericError naming `context`.
inline constexpr double kDensifyThreshold = 0.25;
CsrU64 multiply_checked(const CsrU64& a, const CsrU64& b, const std::string& context);

// Row-wise sum of squared entries, (A A^T)_ii, checked.
std::vector<std::uint64_t> row_square_sums(const CsrU64& a, const std::string& context);
// Column-wise sum of squared entries, (A^T A)_jj, checked.
std::vector<std::uint64_t> col_square_sums(const CsrU64& a, const std::string& context);

// Diagonal (square matrices only).
std::vector<std::uint64_t> diagonal(const CsrU64& a);

inline std::uint64_t checked_add(std::uint64_t a, std::uint64_t b, const std::string& context) {
    std::uint64_t r;
    if (__builtin_add_overflow(a, b, &r))
        throw NumericError("64-bit overflow while accumulating counts" +
                           (context.empty() ? "" : " for " + context));
    return r;
}
inline std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b, const std::string& context) {
    std::uint64_t r;
    if (__builtin_mul_overflow(a, b, &r))
        throw NumericError("64-bit overflow while multiplying counts" +
                           (context.empty() ? "" : " for " + context));
    return r;
}

}  // namespace hsg
