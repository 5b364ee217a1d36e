#include "wfree/fock.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

namespace wfree {

long Limits::basis_cap = 0;

bool Momentum::operator<(const Momentum& o) const {
    if (eig.size() != o.eig.size()) return eig.size() < o.eig.size();
    for (size_t i = 0; i < eig.size(); ++i) {
        int c = eig[i].compare(o.eig[i]);
        if (c) return c < 0;
    }
    return false;
}

Momentum Momentum::operator+(const Momentum& o) const {
    if (eig.size() != o.eig.size()) throw Error(Errc::MomentumMismatch, "momentum rank mismatch");
    Momentum r = *this;
    for (size_t i = 0; i < eig.size(); ++i) r.eig[i] += o.eig[i];
    return r;
}

Momentum Momentum::operator-(const Momentum& o) const {
    if (eig.size() != o.eig.size()) throw Error(Errc::MomentumMismatch, "momentum rank mismatch");
    Momentum r = *this;
    for (size_t i = 0; i < eig.size(); ++i) r.eig[i] -= o.eig[i];
    return r;
}

bool FockState::operator<(const FockState& o) const {
    if (modes.size() != o.modes.size()) return modes.size() < o.modes.size();
    for (size_t i = 0; i < modes.size(); ++i) {
        if (modes[i] == o.modes[i]) continue;
        return modes[i] < o.modes[i];
    }
    return mu < o.mu;
}

int System::index(const std::string& name) const {
    auto it = by_name_.find(name);
    if (it == by_name_.end()) throw Error(Errc::UnknownSpecies, "no species '" + name + "'");
    return it->second;
}

std::optional<int> System::find(const std::string& name) const {
    auto it = by_name_.find(name);
    if (it == by_name_.end()) return std::nullopt;
    return it->second;
}

bool System::has_boson_pairs() const {
    for (auto& s : species_)
        if (s.kind == Kind::BosonHalf) return true;
    return false;
}

std::vector<Int> System::lattice_coords(const Momentum& mu) const {
    std::vector<Int> out;
    for (size_t a = 0; a < lattice_.size(); ++a) {
        Rat acc = 0;
        for (size_t b = 0; b < lattice_.size(); ++b) {
            const RatFun& e = mu.eig[lattice_[b]];
            if (!e.is_constant())
                throw Error(Errc::NonIntegralExponent, "symbolic lattice momentum " + e.str());
            acc += lattice_gram_inv_[a][b] * e.constant();
        }
        if (acc.get_den() != 1)
            throw Error(Errc::NonIntegralExponent, "momentum off the lattice: " + momentum_str(mu));
        out.push_back(acc.get_num());
    }
    return out;
}

int System::lattice_norm_parity(const std::vector<Int>& v) const {
    Int n = 0;
    for (size_t i = 0; i < v.size(); ++i)
        for (size_t j = 0; j < v.size(); ++j) n += v[i] * v[j] * lattice_gram_[i][j];
    return mpz_odd_p(n.get_mpz_t()) ? 1 : 0;
}

// bimultiplicative: eps(e_i,e_j)=1 for i<j, eps(e_j,e_i)=(-1)^{(e_i|e_j)+(e_i|e_i)(e_j|e_j)},
// eps(e_i,e_i)=(-1)^{n(n-1)/2} with n=(e_i|e_i)
int System::cocycle(const std::vector<Int>& a, const std::vector<Int>& b) const {
    Int expo = 0;
    size_t r = lattice_.size();
    for (size_t i = 0; i < r; ++i) {
        for (size_t j = 0; j < r; ++j) {
            Int s;
            if (i < j) continue;
            if (i == j) {
                Int n = lattice_gram_[i][i];
                s = n * (n - 1) / 2;
            } else {
                s = lattice_gram_[i][j] + lattice_gram_[i][i] * lattice_gram_[j][j];
            }
            if (mpz_odd_p(s.get_mpz_t())) expo += a[i] * b[j];
        }
    }
    return mpz_odd_p(expo.get_mpz_t()) ? -1 : 1;
}

Momentum System::zero_momentum() const { return Momentum{std::vector<RatFun>(heis_.size())}; }

Momentum System::momentum_of(const std::vector<RatFun>& coeffs) const {
    Momentum m = zero_momentum();
    for (size_t i = 0; i < heis_.size(); ++i)
        for (size_t j = 0; j < heis_.size(); ++j)
            if (!coeffs[j].is_zero()) m.eig[i] += gram_[i][j] * coeffs[j];
    return m;
}

RatFun System::pairing(const std::vector<RatFun>& a, const std::vector<RatFun>& b) const {
    RatFun acc;
    for (size_t i = 0; i < heis_.size(); ++i) {
        if (a[i].is_zero()) continue;
        for (size_t j = 0; j < heis_.size(); ++j)
            if (!b[j].is_zero()) acc += a[i] * gram_[i][j] * b[j];
    }
    return acc;
}

int System::degree(const FockState& s) const {
    int d = 0;
    for (auto& m : s.modes) d += m.depth - 1 + species_[m.sp].engine_weight;
    return d;
}

int System::charge(const FockState& s) const {
    int q = 0;
    for (auto& m : s.modes) q += charge_[m.sp];
    return q;
}

std::string System::momentum_str(const Momentum& m) const {
    std::ostringstream os;
    os << "(";
    for (size_t i = 0; i < m.eig.size(); ++i) os << (i ? "," : "") << m.eig[i].str();
    os << ")";
    return os.str();
}

std::string System::state_str(const FockState& s) const {
    std::ostringstream os;
    for (auto& m : s.modes) os << species_[m.sp].name << "(" << -m.depth << ")";
    os << "|mu=" << momentum_str(s.mu) << "⟩";
    return os.str();
}

SystemHandle register_system(const std::vector<Species>& species, const PairingTable& pairings,
                             const std::vector<std::string>& lattice_species) {
    auto sys = std::make_shared<System>();
    sys->species_ = species;
    int n = static_cast<int>(species.size());
    for (int i = 0; i < n; ++i) {
        if (species[i].name.empty() || species[i].name == "t")
            throw Error(Errc::InvalidArgument, "invalid species name '" + species[i].name + "'");
        if (!sys->by_name_.emplace(species[i].name, i).second)
            throw Error(Errc::InvalidArgument, "duplicate species '" + species[i].name + "'");
    }
    sys->heis_pos_.assign(n, -1);
    sys->partner_.assign(n, -1);
    sys->contraction_.assign(n, 0);
    sys->charge_.assign(n, 0);
    for (int i = 0; i < n; ++i) {
        const Species& s = species[i];
        if (s.kind == Kind::Heisenberg) {
            if (s.engine_weight != 1 || s.parity != Parity::Even)
                throw Error(Errc::InvalidArgument, "heisenberg species must be even with weight 1");
            sys->heis_pos_[i] = static_cast<int>(sys->heis_.size());
            sys->heis_.push_back(i);
            continue;
        }
        bool odd = s.kind == Kind::FermionHalf;
        if ((s.parity == Parity::Odd) != odd)
            throw Error(Errc::InvalidArgument, "parity of '" + s.name + "' does not match its kind");
        auto it = sys->by_name_.find(s.partner);
        if (it == sys->by_name_.end() || it->second == i) {
            if (odd) throw Error(Errc::UnpairedFermionHalf, "'" + s.name + "' has no registered partner");
            throw Error(Errc::InvalidArgument, "'" + s.name + "' has no registered partner");
        }
        const Species& p = species[it->second];
        if (p.kind != s.kind || p.partner != s.name)
            throw Error(odd ? Errc::UnpairedFermionHalf : Errc::InvalidArgument,
                        "'" + s.name + "' and '" + p.name + "' are not a dual pair");
        if (s.engine_weight + p.engine_weight != 1 || s.engine_weight < 0 || p.engine_weight < 0)
            throw Error(Errc::InvalidArgument, "pair weights must be 0 and 1");
        sys->partner_[i] = it->second;
        bool lead = i < it->second;
        sys->contraction_[i] = lead ? 1 : (odd ? 1 : -1);
        if (!odd) sys->charge_[i] = lead ? 1 : -1;
    }
    size_t h = sys->heis_.size();
    if (pairings.names.size() != h || pairings.gram.size() != h)
        throw Error(Errc::AsymmetricPairing, "pairing table must be square over the heisenberg species");
    std::vector<int> perm(h);
    for (size_t a = 0; a < h; ++a) {
        auto it = sys->by_name_.find(pairings.names[a]);
        if (it == sys->by_name_.end() || sys->heis_pos_[it->second] < 0)
            throw Error(Errc::UnknownSpecies, "pairing names unknown heisenberg species '" + pairings.names[a] + "'");
        perm[a] = sys->heis_pos_[it->second];
        if (pairings.gram[a].size() != h)
            throw Error(Errc::AsymmetricPairing, "pairing table row length mismatch");
    }
    sys->gram_.assign(h, std::vector<RatFun>(h));
    for (size_t a = 0; a < h; ++a)
        for (size_t b = 0; b < h; ++b) {
            if (pairings.gram[a][b] != pairings.gram[b][a])
                throw Error(Errc::AsymmetricPairing,
                            "pairing(" + pairings.names[a] + "," + pairings.names[b] + ") is not symmetric");
            sys->gram_[perm[a]][perm[b]] = pairings.gram[a][b];
        }
    for (auto& name : lattice_species) {
        int i = sys->index(name);
        if (sys->heis_pos_[i] < 0) throw Error(Errc::InvalidArgument, "lattice species must be heisenberg");
        sys->lattice_.push_back(sys->heis_pos_[i]);
    }
    std::sort(sys->lattice_.begin(), sys->lattice_.end());
    size_t r = sys->lattice_.size();
    if (r) {
        sys->lattice_gram_.assign(r, std::vector<Int>(r));
        std::vector<std::vector<Rat>> a(r, std::vector<Rat>(2 * r));
        for (size_t i = 0; i < r; ++i)
            for (size_t j = 0; j < r; ++j) {
                const RatFun& g = sys->gram_[sys->lattice_[i]][sys->lattice_[j]];
                if (!g.is_integer()) throw Error(Errc::InvalidArgument, "lattice form must be integral");
                sys->lattice_gram_[i][j] = g.constant().get_num();
                a[i][j] = g.constant();
                a[i][r + j] = i == j ? 1 : 0;
            }
        for (size_t c = 0; c < r; ++c) {
            size_t p = c;
            while (p < r && a[p][c] == 0) ++p;
            if (p == r) throw Error(Errc::InvalidArgument, "degenerate lattice form");
            std::swap(a[p], a[c]);
            Rat inv = 1 / a[c][c];
            for (auto& x : a[c]) x *= inv;
            for (size_t i = 0; i < r; ++i) {
                if (i == c || a[i][c] == 0) continue;
                Rat f = a[i][c];
                for (size_t j = 0; j < 2 * r; ++j) a[i][j] -= f * a[c][j];
            }
        }
        sys->lattice_gram_inv_.assign(r, std::vector<Rat>(r));
        for (size_t i = 0; i < r; ++i)
            for (size_t j = 0; j < r; ++j) sys->lattice_gram_inv_[i][j] = a[i][r + j];
    }
    return sys;
}

Signed normal_form(const System& sys, const Momentum& mu, std::vector<Mode> raw) {
    int sign = 1;
    // insertion sort, counting odd-odd transpositions
    for (size_t i = 1; i < raw.size(); ++i) {
        size_t j = i;
        while (j > 0 && raw[j] < raw[j - 1]) {
            if (sys.is_odd(raw[j].sp) && sys.is_odd(raw[j - 1].sp)) sign = -sign;
            std::swap(raw[j], raw[j - 1]);
            --j;
        }
    }
    for (size_t i = 1; i < raw.size(); ++i)
        if (raw[i] == raw[i - 1] && sys.is_odd(raw[i].sp)) return {0, FockState{mu, {}}};
    return {sign, FockState{mu, std::move(raw)}};
}

std::vector<FockState> enumerate_basis(const System& sys, const Momentum& mu, int degree, int charge) {
    std::vector<FockState> out;
    if (degree < 0) return out;
    // mode types in canonical order
    std::vector<Mode> types;
    std::vector<int> weight;
    for (int s = 0; s < sys.size(); ++s) {
        int w = sys.sp(s).engine_weight;
        for (int d = degree + 1 - w; d >= 1; --d) {
            types.push_back({s, d});
            weight.push_back(d - 1 + w);
        }
    }
    bool pairs = sys.has_boson_pairs();
    int zero_cap = degree + (charge < 0 ? -charge : charge);
    std::vector<Mode> cur;
    std::function<void(size_t, int)> rec = [&](size_t t, int left) {
        if (t == types.size()) {
            if (left != 0) return;
            FockState s{mu, cur};
            if (pairs && sys.charge(s) != charge) return;
            if (!pairs && charge != 0) return;
            out.push_back(std::move(s));
            if (Limits::basis_cap > 0 && static_cast<long>(out.size()) > Limits::basis_cap)
                throw Error(Errc::ResourceLimit,
                            "basis slice exceeds " + std::to_string(Limits::basis_cap) + " states");
            return;
        }
        int w = weight[t];
        int maxk;
        if (sys.is_odd(types[t].sp))
            maxk = 1;
        else if (w == 0)
            maxk = zero_cap;
        else
            maxk = left / w;
        size_t mark = cur.size();
        for (int k = 0; k <= maxk; ++k) {
            if (k * w > left) break;
            rec(t + 1, left - k * w);
            cur.push_back(types[t]);
        }
        cur.resize(mark);
    };
    rec(0, degree);
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<long> graded_dimension(const System& sys, const Momentum& mu, int lo, int hi, int charge) {
    std::vector<long> out;
    for (int d = lo; d <= hi; ++d) out.push_back(static_cast<long>(enumerate_basis(sys, mu, d, charge).size()));
    return out;
}

}  // namespace wfree
