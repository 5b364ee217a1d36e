#pragma once

#include <vector>

#include "wfree/scalar.hpp"

namespace wfree {

using RatMatrix = std::vector<std::vector<Rat>>;
using FunMatrix = std::vector<std::vector<RatFun>>;

// fraction-free Gaussian elimination after clearing row denominators
long rank(const RatMatrix& m);
// reduced row echelon form in place, returns pivot columns
std::vector<int> rref(RatMatrix& m);
// basis of {v : m v = 0}, one vector per free column, reduced against the pivots
RatMatrix kernel_basis(const RatMatrix& m, long cols);

long rank(const FunMatrix& m);
bool is_numeric(const FunMatrix& m);
RatMatrix to_rat(const FunMatrix& m);

struct SymbolicLimits {
    static constexpr long max_dim = 64;
};

}  // namespace wfree
