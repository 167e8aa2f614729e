#include "parab/matrix.hpp"

namespace parab {

RMat rmat_zero(const Field& f, int r, int c) { return RMat(r, c, RatFn::zero(f)); }

RMat rmat_identity(const Field& f, int n) { return RMat::identity(n, RatFn::zero(f), RatFn::one(f)); }

RMat rmat_derivative(const RMat& m) {
    return m.map([](const RatFn& v) { return v.derivative(); });
}

RMat rmat_subs_power(const RMat& m, int n) {
    return m.map([n](const RatFn& v) { return v.subs_power(n); });
}

FqMat fqmat_zero(const Field& f, int r, int c) { return FqMat(r, c, f.zero()); }

FqMat fqmat_identity(const Field& f, int n) { return FqMat::identity(n, f.zero(), f.one()); }

std::vector<int> rref(const Field& f, std::vector<std::vector<u64>>& rows, int ncols) {
    std::vector<int> piv;
    size_t r = 0;
    for (int c = 0; c < ncols && r < rows.size(); ++c) {
        size_t s = r;
        while (s < rows.size() && rows[s][c] == 0) ++s;
        if (s == rows.size()) continue;
        std::swap(rows[s], rows[r]);
        u64 inv = f.inv(rows[r][c]);
        for (int j = c; j < ncols; ++j) rows[r][j] = f.mul(rows[r][j], inv);
        for (size_t i = 0; i < rows.size(); ++i) {
            if (i == r || rows[i][c] == 0) continue;
            u64 m = rows[i][c];
            auto& ri = rows[i];
            const auto& rr = rows[r];
            for (int j = c; j < ncols; ++j)
                if (rr[j]) ri[j] = f.sub(ri[j], f.mul(m, rr[j]));
        }
        piv.push_back(c);
        ++r;
    }
    rows.resize(r);
    return piv;
}

std::vector<std::vector<u64>> nullspace(const Field& f, std::vector<std::vector<u64>> rows, int ncols) {
    auto piv = rref(f, rows, ncols);
    std::vector<int> is_piv(ncols, -1);
    for (size_t i = 0; i < piv.size(); ++i) is_piv[piv[i]] = int(i);
    std::vector<std::vector<u64>> out;
    for (int c = 0; c < ncols; ++c) {
        if (is_piv[c] >= 0) continue;
        std::vector<u64> v(ncols, 0);
        v[c] = 1;
        for (size_t i = 0; i < piv.size(); ++i) v[piv[i]] = f.neg(rows[i][c]);
        out.push_back(std::move(v));
    }
    return out;
}

int rank(const Field& f, std::vector<std::vector<u64>> rows, int ncols) {
    return int(rref(f, rows, ncols).size());
}

bool solve(const Field& f, std::vector<std::vector<u64>> rows, const std::vector<u64>& rhs, int ncols,
           std::vector<u64>& out) {
    for (size_t i = 0; i < rows.size(); ++i) rows[i].push_back(rhs[i]);
    auto piv = rref(f, rows, ncols + 1);
    if (!piv.empty() && piv.back() == ncols) return false;
    out.assign(ncols, 0);
    for (size_t i = 0; i < piv.size(); ++i) out[piv[i]] = rows[i][ncols];
    return true;
}

FqMat to_fqmat(const Field& f, const std::vector<std::vector<u64>>& rows, int ncols) {
    FqMat m(int(rows.size()), ncols, f.zero());
    for (size_t i = 0; i < rows.size(); ++i)
        for (int j = 0; j < ncols; ++j) m(int(i), j) = f.elem(rows[i][j]);
    return m;
}

std::vector<std::vector<u64>> from_fqmat(const FqMat& m) {
    std::vector<std::vector<u64>> rows(m.rows(), std::vector<u64>(m.cols()));
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) rows[i][j] = m(i, j).code();
    return rows;
}

}  // namespace parab
