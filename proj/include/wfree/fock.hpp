#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "wfree/scalar.hpp"

namespace wfree {

enum class Parity { Even, Odd };
enum class Kind { Heisenberg, FermionHalf, BosonHalf };

struct Species {
    std::string name;
    Parity parity = Parity::Even;
    Kind kind = Kind::Heisenberg;
    int engine_weight = 1;
    std::string partner;

    static Species heisenberg(std::string n) { return {std::move(n), Parity::Even, Kind::Heisenberg, 1, {}}; }
    static Species fermion(std::string n, int w, std::string p) {
        return {std::move(n), Parity::Odd, Kind::FermionHalf, w, std::move(p)};
    }
    static Species boson(std::string n, int w, std::string p) {
        return {std::move(n), Parity::Even, Kind::BosonHalf, w, std::move(p)};
    }
};

// second-order pole constants between heisenberg species, in the order given by names
struct PairingTable {
    std::vector<std::string> names;
    std::vector<std::vector<RatFun>> gram;
};

// zero-mode eigenvalues, one per heisenberg species in registration order
struct Momentum {
    std::vector<RatFun> eig;

    bool operator==(const Momentum& o) const { return eig == o.eig; }
    bool operator!=(const Momentum& o) const { return !(eig == o.eig); }
    bool operator<(const Momentum& o) const;
    Momentum operator+(const Momentum& o) const;
    Momentum operator-(const Momentum& o) const;
};

struct Mode {
    int sp;
    int depth;  // the mode is sp_(-depth)
    bool operator==(const Mode& o) const { return sp == o.sp && depth == o.depth; }
    // canonical order: species registration order, then depth descending
    bool operator<(const Mode& o) const { return sp != o.sp ? sp < o.sp : depth > o.depth; }
};

struct FockState {
    Momentum mu;
    std::vector<Mode> modes;

    bool operator==(const FockState& o) const { return modes == o.modes && mu == o.mu; }
    bool operator<(const FockState& o) const;
};

class System {
public:
    const std::vector<Species>& species() const { return species_; }
    int size() const { return static_cast<int>(species_.size()); }
    int index(const std::string& name) const;
    std::optional<int> find(const std::string& name) const;
    const Species& sp(int i) const { return species_[i]; }
    bool is_odd(int i) const { return species_[i].parity == Parity::Odd; }

    int heis_count() const { return static_cast<int>(heis_.size()); }
    const std::vector<int>& heis() const { return heis_; }
    int heis_pos(int sp) const { return heis_pos_[sp]; }  // -1 if not heisenberg
    const RatFun& gram(int hi, int hj) const { return gram_[hi][hj]; }  // heisenberg positions

    int partner(int sp) const { return partner_[sp]; }
    // constant c with [u_(m), v_(-m-1)] = c for u = sp and v its partner
    int contraction(int sp) const { return contraction_[sp]; }
    int charge(int sp) const { return charge_[sp]; }
    bool has_boson_pairs() const;

    const std::vector<int>& lattice() const { return lattice_; }  // heisenberg positions
    bool has_lattice() const { return !lattice_.empty(); }
    std::vector<Int> lattice_coords(const Momentum& mu) const;
    int lattice_norm_parity(const std::vector<Int>& v) const;
    int cocycle(const std::vector<Int>& a, const std::vector<Int>& b) const;

    Momentum zero_momentum() const;
    // momentum with eigenvalues G * coeffs, coeffs given over heisenberg positions
    Momentum momentum_of(const std::vector<RatFun>& coeffs) const;
    RatFun pairing(const std::vector<RatFun>& a, const std::vector<RatFun>& b) const;

    int degree(const FockState& s) const;
    int charge(const FockState& s) const;
    std::string state_str(const FockState& s) const;
    std::string momentum_str(const Momentum& m) const;

private:
    friend std::shared_ptr<const System> register_system(const std::vector<Species>&, const PairingTable&,
                                                          const std::vector<std::string>&);
    std::vector<Species> species_;
    std::map<std::string, int> by_name_;
    std::vector<int> heis_, heis_pos_, partner_, contraction_, charge_;
    std::vector<std::vector<RatFun>> gram_;
    std::vector<int> lattice_;
    std::vector<std::vector<Int>> lattice_gram_;
    std::vector<std::vector<Rat>> lattice_gram_inv_;
};

using SystemHandle = std::shared_ptr<const System>;

SystemHandle register_system(const std::vector<Species>& species, const PairingTable& pairings,
                             const std::vector<std::string>& lattice_species = {});

// signed canonical form; sign 0 means the monomial vanishes
struct Signed {
    int sign;
    FockState state;
};
Signed normal_form(const System& sys, const Momentum& mu, std::vector<Mode> raw);

struct Limits {
    static long basis_cap;  // 0 = unlimited
};

std::vector<FockState> enumerate_basis(const System& sys, const Momentum& mu, int degree, int charge = 0);
std::vector<long> graded_dimension(const System& sys, const Momentum& mu, int lo, int hi, int charge = 0);

}  // namespace wfree
