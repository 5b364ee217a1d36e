#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "wfree/catalog.hpp"

namespace wfree {

struct ReportItem {
    std::string id;
    std::string expected;
    std::string computed;
    bool equal = false;
};

struct DegreeRow {
    int degree = 0;
    long dim_left = 0;
    long dim_right = 0;
    bool equal = false;
};

struct Report {
    std::string suite;
    std::vector<std::pair<std::string, std::string>> inputs;
    std::vector<ReportItem> items;
    std::vector<DegreeRow> per_degree;

    bool pass() const;
    void input(const std::string& key, const std::string& value) { inputs.emplace_back(key, value); }
    void add(const std::string& id, const std::string& expected, const std::string& computed, bool equal);
    void check(const std::string& id, bool ok);
    // appends the other report's items and rows, item ids prefixed
    void absorb(const Report& other, const std::string& prefix);
};

Report check_homomorphism(const Realization& r);
Report check_annihilation(const Realization& r);

// negated companion field, for the covariance negative control
Realization perturb_companion(const Realization& r);
Report check_screening_covariance(const Realization& r);

Report check_resolution(const Rat& k1, const Rat& k2, int max_degree, int terms, int compose_degree = -1);
Report check_rank1_ff_duality(const Rat& K, int max_degree);

// symbolic Gram identity between the two coset systems
Report check_gram_duality(const PairTag& p);
Report check_coset_duality(const PairTag& p, const Rat& k1, int max_degree);

Report check_ks(const PairTag& p, const RatFun& k2, bool drop_psi = false);
Report norm_degeneracy(const PairTag& p);

// per-degree dimensions of one charge slice from the product formula
std::vector<long> character_oracle(const System& sys, int max_degree, int charge = 0);
Report check_counting(const System& sys, const Momentum& mu, int max_degree, const std::string& label);

struct DeltaSample {
    Rat k1, k2, mu1, mu2;
};
Report check_delta(const std::vector<DeltaSample>& samples);

// deterministic rational levels away from small-denominator points
std::vector<Rat> sample_levels(std::uint64_t seed, int count);
// power series coefficients of prod (1+q^n)^2 (1-q^n)^-2
std::vector<long> wakimoto_character(int max_degree);
// partitions into parts >= 2
std::vector<long> virasoro_character(int max_degree);

}  // namespace wfree
