#include "wfree/linalg.hpp"

#include <algorithm>

namespace wfree {

long rank(const RatMatrix& m) {
    if (m.empty()) return 0;
    size_t cols = m[0].size();
    std::vector<std::vector<Int>> a;
    a.reserve(m.size());
    for (auto& row : m) {
        Int l = 1;
        bool nz = false;
        for (auto& x : row)
            if (x != 0) {
                nz = true;
                mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.get_den_mpz_t());
            }
        if (!nz) continue;
        std::vector<Int> r(cols);
        for (size_t j = 0; j < cols; ++j)
            if (row[j] != 0) r[j] = row[j].get_num() * (l / row[j].get_den());
        a.push_back(std::move(r));
    }
    long rk = 0;
    size_t rows = a.size();
    Int prev = 1;
    for (size_t c = 0; c < cols && static_cast<size_t>(rk) < rows; ++c) {
        size_t p = rk;
        while (p < rows && a[p][c] == 0) ++p;
        if (p == rows) continue;
        std::swap(a[p], a[rk]);
        const Int piv = a[rk][c];
        for (size_t i = rk + 1; i < rows; ++i) {
            const Int f = a[i][c];
            for (size_t j = c; j < cols; ++j) {
                Int v = piv * a[i][j] - f * a[rk][j];
                mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
                a[i][j] = v;
            }
        }
        prev = piv;
        ++rk;
    }
    return rk;
}

std::vector<int> rref(RatMatrix& m) {
    std::vector<int> piv;
    if (m.empty()) return piv;
    size_t rows = m.size(), cols = m[0].size(), r = 0;
    for (size_t c = 0; c < cols && r < rows; ++c) {
        size_t p = r;
        while (p < rows && m[p][c] == 0) ++p;
        if (p == rows) continue;
        std::swap(m[p], m[r]);
        Rat inv = 1 / m[r][c];
        for (size_t j = c; j < cols; ++j) m[r][j] *= inv;
        for (size_t i = 0; i < rows; ++i) {
            if (i == r || m[i][c] == 0) continue;
            Rat f = m[i][c];
            for (size_t j = c; j < cols; ++j)
                if (m[r][j] != 0) m[i][j] -= f * m[r][j];
        }
        piv.push_back(static_cast<int>(c));
        ++r;
    }
    m.resize(r);
    return piv;
}

RatMatrix kernel_basis(const RatMatrix& m, long cols) {
    RatMatrix a = m;
    std::vector<int> piv = rref(a);
    std::vector<bool> is_piv(cols, false);
    for (int p : piv) is_piv[p] = true;
    RatMatrix out;
    for (long f = 0; f < cols; ++f) {
        if (is_piv[f]) continue;
        std::vector<Rat> v(cols);
        v[f] = 1;
        for (size_t r = 0; r < piv.size(); ++r) v[piv[r]] = -a[r][f];
        out.push_back(std::move(v));
    }
    return out;
}

bool is_numeric(const FunMatrix& m) {
    for (auto& r : m)
        for (auto& x : r)
            if (!x.is_constant()) return false;
    return true;
}

RatMatrix to_rat(const FunMatrix& m) {
    RatMatrix out(m.size());
    for (size_t i = 0; i < m.size(); ++i) {
        out[i].reserve(m[i].size());
        for (auto& x : m[i]) out[i].push_back(x.constant());
    }
    return out;
}

long rank(const FunMatrix& m) {
    if (is_numeric(m)) return rank(to_rat(m));
    if (m.empty()) return 0;
    size_t rows = m.size(), cols = m[0].size();
    if (static_cast<long>(std::max(rows, cols)) > SymbolicLimits::max_dim)
        throw Error(Errc::ResourceLimit, "symbolic elimination limited to dimension " +
                                             std::to_string(SymbolicLimits::max_dim));
    FunMatrix a = m;
    long rk = 0;
    for (size_t c = 0; c < cols && static_cast<size_t>(rk) < rows; ++c) {
        size_t p = rk;
        while (p < rows && a[p][c].is_zero()) ++p;
        if (p == rows) continue;
        std::swap(a[p], a[rk]);
        RatFun inv = RatFun(1) / a[rk][c];
        for (size_t i = rk + 1; i < rows; ++i) {
            if (a[i][c].is_zero()) continue;
            RatFun f = a[i][c] * inv;
            for (size_t j = c; j < cols; ++j)
                if (!a[rk][j].is_zero()) a[i][j] -= f * a[rk][j];
        }
        ++rk;
    }
    return rk;
}

}  // namespace wfree
