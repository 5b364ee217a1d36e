#include "wfree/screening.hpp"

#include <map>

namespace wfree {

Momentum target_of(const System& sys, const ScreeningOp& op) { return op.source + shift_of(sys, op.field); }

const Block* GradedMap::at(int degree) const {
    for (auto& b : blocks)
        if (b.degree == degree) return &b;
    return nullptr;
}

GradedMap residue_map(const System& sys, const ScreeningOp& op, int lo, int hi, int charge) {
    GradedMap g;
    g.name = op.name;
    g.source = op.source;
    g.source_charge = charge;
    auto f = compile(sys, op.field);
    g.target = target_of(sys, op);
    int dq = charge_of(sys, op.field);
    int shift = dshift_const(sys, op.field, op.source);
    for (int d = lo; d <= hi; ++d) {
        Block b;
        b.degree = d;
        b.target_degree = d + shift;
        b.cols = enumerate_basis(sys, op.source, d);
        if (charge != 0 || sys.has_boson_pairs()) b.cols = enumerate_basis(sys, op.source, d, charge);
        b.rows = enumerate_basis(sys, g.target, b.target_degree, charge + dq);
        std::map<FockState, size_t> idx;
        for (size_t i = 0; i < b.rows.size(); ++i) idx.emplace(b.rows[i], i);
        b.m.assign(b.rows.size(), std::vector<RatFun>(b.cols.size()));
        for (size_t j = 0; j < b.cols.size(); ++j) {
            LinComb r = mode_apply(sys, f, 0, b.cols[j]);
            for (auto& [s, c] : r) {
                auto it = idx.find(s);
                if (it == idx.end())
                    throw Error(Errc::InvalidArgument, "residue left the target slice: " + sys.state_str(s));
                b.m[it->second][j] = c;
            }
        }
        g.blocks.push_back(std::move(b));
    }
    return g;
}

KernelReport joint_kernel(const System& sys, const Momentum& source, const std::vector<GradedMap>& maps, int lo,
                          int hi, int charge, bool with_basis) {
    KernelReport rep;
    for (auto& g : maps)
        if (g.source != source || g.source_charge != charge)
            throw Error(Errc::ShapeMismatch, "map '" + g.name + "' has a different source");
    for (int d = lo; d <= hi; ++d) {
        long n = static_cast<long>(enumerate_basis(sys, source, d, charge).size());
        FunMatrix stacked;
        for (auto& g : maps) {
            const Block* b = g.at(d);
            if (!b) throw Error(Errc::ShapeMismatch, "map '" + g.name + "' lacks degree " + std::to_string(d));
            if (static_cast<long>(b->cols.size()) != n)
                throw Error(Errc::ShapeMismatch, "map '" + g.name + "' has a different source dimension");
            stacked.insert(stacked.end(), b->m.begin(), b->m.end());
        }
        rep.degrees.push_back(d);
        rep.source_dims.push_back(n);
        bool numeric = is_numeric(stacked);
        long rk = stacked.empty() ? 0 : rank(stacked);
        rep.dims.push_back(n - rk);
        if (with_basis && numeric) {
            RatMatrix k = stacked.empty() ? RatMatrix{} : to_rat(stacked);
            RatMatrix basis = kernel_basis(k, n);
            rref(basis);
            rep.bases.push_back(std::move(basis));
        }
    }
    return rep;
}

std::vector<bool> compose_check(const System& sys, const ScreeningOp& s2, const ScreeningOp& s1, int lo, int hi,
                                int charge) {
    Momentum mid = target_of(sys, s1);
    if (mid != s2.source)
        throw Error(Errc::MomentumMismatch, "target " + sys.momentum_str(mid) + " of '" + s1.name +
                                                "' differs from source " + sys.momentum_str(s2.source) + " of '" +
                                                s2.name + "'");
    auto f1 = compile(sys, s1.field), f2 = compile(sys, s2.field);
    std::vector<bool> out;
    for (int d = lo; d <= hi; ++d) {
        bool ok = true;
        for (auto& s : enumerate_basis(sys, s1.source, d, charge)) {
            LinComb r = mode_apply(sys, f2, 0, mode_apply(sys, f1, 0, s));
            if (!r.empty()) {
                ok = false;
                break;
            }
        }
        out.push_back(ok);
    }
    return out;
}

bool annihilates(const System& sys, const std::vector<ScreeningOp>& screenings, const LinComb& v) {
    for (auto& op : screenings) {
        auto f = compile(sys, op.field);
        if (!mode_apply(sys, f, 0, v).empty()) return false;
    }
    return true;
}

void write_triplets(std::ostream& os, const GradedMap& g) {
    os << "degree,row,col,value\n";
    for (auto& b : g.blocks)
        for (size_t i = 0; i < b.rows.size(); ++i)
            for (size_t j = 0; j < b.cols.size(); ++j)
                if (!b.m[i][j].is_zero()) os << b.degree << "," << i << "," << j << "," << b.m[i][j].str() << "\n";
}

}  // namespace wfree
