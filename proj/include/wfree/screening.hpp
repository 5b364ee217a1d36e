#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "wfree/field.hpp"
#include "wfree/linalg.hpp"

namespace wfree {

struct ScreeningOp {
    std::string name;
    FieldExpr field;
    Momentum source;
};

Momentum target_of(const System& sys, const ScreeningOp& op);

struct Block {
    int degree = 0;         // source degree
    int target_degree = 0;
    std::vector<FockState> cols;  // source basis
    std::vector<FockState> rows;  // target basis
    FunMatrix m;                  // rows x cols
};

struct GradedMap {
    std::string name;
    Momentum source, target;
    int source_charge = 0;
    std::vector<Block> blocks;
    const Block* at(int degree) const;
};

GradedMap residue_map(const System& sys, const ScreeningOp& op, int lo, int hi, int charge = 0);

struct KernelReport {
    std::vector<int> degrees;
    std::vector<long> source_dims;
    std::vector<long> dims;
    std::vector<RatMatrix> bases;  // filled when requested and the maps are numeric
};

KernelReport joint_kernel(const System& sys, const Momentum& source, const std::vector<GradedMap>& maps, int lo,
                          int hi, int charge = 0, bool with_basis = false);

// s2 after s1 vanishes on each degree slice of the source of s1
std::vector<bool> compose_check(const System& sys, const ScreeningOp& s2, const ScreeningOp& s1, int lo, int hi,
                                int charge = 0);

bool annihilates(const System& sys, const std::vector<ScreeningOp>& screenings, const LinComb& v);

void write_triplets(std::ostream& os, const GradedMap& g);

}  // namespace wfree
