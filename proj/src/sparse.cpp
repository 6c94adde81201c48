#include "hsg/sparse.hpp"

#include <algorithm>
#include <tuple>

namespace hsg {

std::uint64_t CsrU64::at(long r, long c) const {
    for (long p = row_ptr[r]; p < row_ptr[r + 1]; ++p)
        if (col[p] == c) return val[p];
    return 0;
}

CsrU64 CsrU64::zero(long rows, long cols) {
    CsrU64 m;
    m.rows = rows;
    m.cols = cols;
    m.row_ptr.assign(rows + 1, 0);
    return m;
}

CsrU64 CsrU64::from_triplets(long rows, long cols,
                             std::vector<std::tuple<long, long, std::uint64_t>> triplets,
                             const std::string& context) {
    std::sort(triplets.begin(), triplets.end());
    CsrU64 m;
    m.rows = rows;
    m.cols = cols;
    m.row_ptr.assign(rows + 1, 0);
    long prev_r = -1, prev_c = -1;
    for (const auto& [r, c, v] : triplets) {
        if (r < 0 || r >= rows || c < 0 || c >= cols) throw DataError("triplet index out of range");
        if (v == 0) continue;
        if (r == prev_r && c == prev_c) {
            m.val.back() = checked_add(m.val.back(), v, context);
        } else {
            m.col.push_back(c);
            m.val.push_back(v);
            m.row_ptr[r + 1]++;
            prev_r = r;
            prev_c = c;
        }
    }
    for (long r = 0; r < rows; ++r) m.row_ptr[r + 1] += m.row_ptr[r];
    return m;
}

CsrU64 transpose(const CsrU64& a) {
    CsrU64 t;
    t.rows = a.cols;
    t.cols = a.rows;
    t.row_ptr.assign(t.rows + 1, 0);
    t.col.resize(a.nnz());
    t.val.resize(a.nnz());
    for (long p = 0; p < a.nnz(); ++p) t.row_ptr[a.col[p] + 1]++;
    for (long r = 0; r < t.rows; ++r) t.row_ptr[r + 1] += t.row_ptr[r];
    std::vector<long> cursor(t.row_ptr.begin(), t.row_ptr.end() - 1);
    for (long r = 0; r < a.rows; ++r) {
        for (long p = a.row_ptr[r]; p < a.row_ptr[r + 1]; ++p) {
            long pos = cursor[a.col[p]]++;
            t.col[pos] = r;
            t.val[pos] = a.val[p];
        }
    }
    return t;
}

static CsrU64 multiply_sparse(const CsrU64& a, const CsrU64& b, const std::string& context) {
    CsrU64 c;
    c.rows = a.rows;
    c.cols = b.cols;
    c.row_ptr.assign(c.rows + 1, 0);
    std::vector<std::uint64_t> acc(b.cols, 0);
    std::vector<long> touched;
    touched.reserve(64);
    for (long r = 0; r < a.rows; ++r) {
        touched.clear();
        for (long p = a.row_ptr[r]; p < a.row_ptr[r + 1]; ++p) {
            std::uint64_t av = a.val[p];
            long k = a.col[p];
            for (long q = b.row_ptr[k]; q < b.row_ptr[k + 1]; ++q) {
                long j = b.col[q];
                std::uint64_t prod = checked_mul(av, b.val[q], context);
                if (acc[j] == 0 && prod != 0) touched.push_back(j);
                acc[j] = checked_add(acc[j], prod, context);
            }
        }
        std::sort(touched.begin(), touched.end());
        for (long j : touched) {
            if (acc[j] != 0) {
                c.col.push_back(j);
                c.val.push_back(acc[j]);
            }
            acc[j] = 0;
        }
        c.row_ptr[r + 1] = static_cast<long>(c.col.size());
    }
    return c;
}

static CsrU64 multiply_dense(const CsrU64& a, const CsrU64& b, const std::string& context) {
    std::vector<std::uint64_t> dense(static_cast<std::size_t>(a.rows) * b.cols, 0);
    for (long r = 0; r < a.rows; ++r) {
        for (long p = a.row_ptr[r]; p < a.row_ptr[r + 1]; ++p) {
            std::uint64_t av = a.val[p];
            long k = a.col[p];
            std::uint64_t* out = dense.data() + static_cast<std::size_t>(r) * b.cols;
            for (long q = b.row_ptr[k]; q < b.row_ptr[k + 1]; ++q) {
                std::uint64_t prod = checked_mul(av, b.val[q], context);
                out[b.col[q]] = checked_add(out[b.col[q]], prod, context);
            }
        }
    }
    CsrU64 c;
    c.rows = a.rows;
    c.cols = b.cols;
    c.row_ptr.assign(c.rows + 1, 0);
    for (long r = 0; r < a.rows; ++r) {
        const std::uint64_t* row = dense.data() + static_cast<std::size_t>(r) * b.cols;
        for (long j = 0; j < b.cols; ++j) {
            if (row[j] != 0) {
                c.col.push_back(j);
                c.val.push_back(row[j]);
            }
        }
        c.row_ptr[r + 1] = static_cast<long>(c.col.size());
    }
    return c;
}

CsrU64 multiply_checked(const CsrU64& a, const CsrU64& b, const std::string& context) {
    if (a.cols != b.rows) throw DataError("sparse multiply: dimension mismatch");
    if (a.density() > kDensifyThreshold || b.density() > kDensifyThreshold)
        return multiply_dense(a, b, context);
    return multiply_sparse(a, b, context);
}

std::vector<std::uint64_t> row_square_sums(const CsrU64& a, const std::string& context) {
    std::vector<std::uint64_t> out(a.rows, 0);
    for (long r = 0; r < a.rows; ++r)
        for (long p = a.row_ptr[r]; p < a.row_ptr[r + 1]; ++p)
            out[r] = checked_add(out[r], checked_mul(a.val[p], a.val[p], context), context);
    return out;
}

std::vector<std::uint64_t> col_square_sums(const CsrU64& a, const std::string& context) {
    std::vector<std::uint64_t> out(a.cols, 0);
    for (long p = 0; p < a.nnz(); ++p)
        out[a.col[p]] = checked_add(out[a.col[p]], checked_mul(a.val[p], a.val[p], context), context);
    return out;
}

std::vector<std::uint64_t> diagonal(const CsrU64& a) {
    if (a.rows != a.cols) throw DataError("diagonal of non-square matrix");
    std::vector<std::uint64_t> out(a.rows, 0);
    for (long r = 0; r < a.rows; ++r)
        for (long p = a.row_ptr[r]; p < a.row_ptr[r + 1]; ++p)
            if (a.col[p] == r) out[r] = a.val[p];
    return out;
}

}  // namespace hsg
