#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "wfree/screening.hpp"

namespace wfree {

enum class PairKind { SL, SO };

struct PairTag {
    PairKind kind = PairKind::SL;
    int n = 2;
};

PairKind parse_pair(const std::string& s);
std::string pair_name(PairKind k);
int lacity(PairKind k);
Rat dual_coxeter1(const PairTag& p);
Rat dual_coxeter2(const PairTag& p);

// (alpha_i|alpha_j) for g1, indices 1..n stored at 0..n-1
std::vector<std::vector<Rat>> cartan_form(const PairTag& p);
// (alpha_i|alpha_j) for g2, indices 0..n
std::vector<std::vector<Rat>> super_form(const PairTag& p);
// coefficients of the coweights in the simple roots
std::vector<Rat> omega1(const PairTag& p);  // alpha_1..alpha_n
std::vector<Rat> omega0(const PairTag& p);  // alpha_0..alpha_n

struct LevelData {
    PairTag pair;
    RatFun k1, k2;
};

Rat dual_level(const PairTag& p, const Rat& k1);
RatFun dual_level(const PairTag& p, const RatFun& k1);
Rat dual_level_inverse(const PairTag& p, const Rat& k2);
LevelData level_data(const PairTag& p, const Rat& k1);

std::pair<Rat, Rat> degeneracy_constants(const PairTag& p);

struct Admissible {
    Rat k;
    Rat partner;
    bool valid = false;
    std::string reason;
};
// SL: k = -(n+1) + u/n, v ignored.  SO: k = -(2n-1) + u/v
Admissible admissible_levels(PairKind kind, int n, long u, long v = 0);
// whether k is one of the admissible rational levels above, where kernels may jump
bool is_admissible(const PairTag& p, const Rat& k);
// which set a level of g1 (side 1) or g2 (side 2) falls in, empty when none
std::string excluded_set(const PairTag& p, int side, const Rat& k);

enum class DeltaSign { Plus, Minus };
Rat delta_conformal(const Rat& n, const Rat& e, const Rat& k1, const Rat& k2, DeltaSign which);

// expected singular part per ordered generator pair; name "1" is the vacuum
using PoleTerms = std::map<int, DirTerms>;
struct Structure {
    std::vector<std::string> gens;
    std::map<std::pair<std::string, std::string>, PoleTerms> table;  // absent = regular
};

using SuperMatrix = std::vector<std::vector<Rat>>;
struct CovarianceData {
    std::vector<int> parity;                                      // per matrix index
    std::vector<std::pair<std::string, SuperMatrix>> currents;    // generator name -> matrix
    std::vector<std::pair<std::string, SuperMatrix>> roots;       // companion name -> root vector
};

struct Realization {
    std::string key;
    SystemHandle sys;
    std::vector<std::pair<std::string, FieldExpr>> generators;
    Structure structure;
    FieldExpr conformal;
    std::vector<ScreeningOp> screenings;
    std::vector<std::pair<std::string, FieldExpr>> distinguished;
    std::vector<std::string> annihilated;
    std::optional<CovarianceData> covariance;

    const FieldExpr& field(const std::string& name) const;
};

Realization gl11_wakimoto(const RatFun& k1, const RatFun& k2);
Realization fms_realization();
Realization boson_fermion_realization();

enum class Form { Miura, Bosonized, Coset };
Form parse_form(const std::string& s);
std::string form_name(Form f);

Realization subregular_realization(const PairTag& p, const RatFun& k, Form form);
Realization principal_super_realization(const PairTag& p, const RatFun& k, Form form);

// "subregular-sl:3:coset", "super-osp:2:miura", "gl11-wakimoto", "fms", "boson-fermion"
Realization realization_by_key(const std::string& key, const RatFun& level, const RatFun& level2 = RatFun());
std::vector<std::string> catalog_keys();

struct NamedCurrent {
    std::string name;
    FieldExpr field;
    SystemHandle sys;
};
// H1 on the subregular miura system at k1 and H2 on the super miura system at k2
std::vector<NamedCurrent> distinguished_currents(const PairTag& p, const RatFun& k1, const RatFun& k2);

struct KSFields {
    SystemHandle a_sys, b_sys;
    RatFun K1, K2;
    std::vector<std::pair<std::string, FieldExpr>> a_side;  // X, Y, A1..An, Ht2
    std::vector<std::pair<std::string, FieldExpr>> b_side;  // phit, B0..Bn, Ht1
};
KSFields ks_fields(const PairTag& p, const RatFun& k2);

// ambient fields whose Gram gives the coset systems
struct CosetAmbient {
    SystemHandle sys;
    std::vector<FieldExpr> fields;
};
CosetAmbient alpha_tilde_ambient(const PairTag& p, const RatFun& k1);
CosetAmbient beta_tilde_ambient(const PairTag& p, const RatFun& k2);
Matrix bordermatrix(const PairTag& p, const RatFun& K);

}  // namespace wfree
