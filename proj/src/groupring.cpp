#include "q2/groupring.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <set>

namespace q2 {

namespace {

bool syllable_is_identity(const Syllable& s) { return s.k == 0 && s.eps == 0; }

// Ordering key inside one factor: by |k|, positive before negative, then eps.
int cmp_syllable(const Syllable& a, const Syllable& b) {
    if (a.factor != b.factor) return a.factor < b.factor ? -1 : 1;
    int c = cmp(abs(a.k), abs(b.k));
    if (c != 0) return c < 0 ? -1 : 1;
    bool an = a.k < 0, bn = b.k < 0;
    if (an != bn) return an ? 1 : -1;
    if (a.eps != b.eps) return a.eps < b.eps ? -1 : 1;
    return 0;
}

Syllable combine(const Syllable& a, const Syllable& b, const Factor& f) {
    Syllable r{a.factor, a.k + b.k, 0};
    switch (f.kind) {
        case FactorKind::Cyclic:
            r.k %= f.n;
            break;
        case FactorKind::Infinite:
            break;
        case FactorKind::ZxC2:
            r.eps = a.eps ^ b.eps;
            break;
    }
    return r;
}

std::string pow_str(const std::string& name, const mpz_class& k) {
    if (k == 1) return name;
    return fmt::format("{}^{}", name, k.get_str());
}

}  // namespace

int GroupSpec::num_generators() const {
    int n = 0;
    for (const auto& f : factors) n += static_cast<int>(f.names.size());
    return n;
}

std::pair<int, int> GroupSpec::generator(int g) const {
    for (int i = 0; i < static_cast<int>(factors.size()); ++i) {
        int m = static_cast<int>(factors[i].names.size());
        if (g < m) return {i, g};
        g -= m;
    }
    throw Error("generator index out of range");
}

int GroupSpec::generator_index(const std::string& name) const {
    int g = 0;
    for (const auto& f : factors)
        for (const auto& n : f.names) {
            if (n == name) return g;
            ++g;
        }
    return -1;
}

const std::string& GroupSpec::generator_name(int g) const {
    auto [f, r] = generator(g);
    return factors[f].names[r];
}

Word GroupSpec::generator_word(int g) const {
    auto [f, r] = generator(g);
    if (factors[f].kind == FactorKind::ZxC2 && r == 1) return {Syllable{f, 0, 1}};
    return {Syllable{f, 1, 0}};
}

bool GroupSpec::finite() const {
    if (factors.empty()) return true;
    return factors.size() == 1 && factors[0].kind == FactorKind::Cyclic;
}

long GroupSpec::order() const {
    if (!finite()) throw Error("order() of an infinite group");
    return factors.empty() ? 1 : factors[0].n;
}

std::string GroupSpec::render() const {
    if (factors.empty()) return "1";
    std::string out;
    for (size_t i = 0; i < factors.size(); ++i) {
        const auto& f = factors[i];
        if (i) out += "*";
        switch (f.kind) {
            case FactorKind::Cyclic:
                out += fmt::format("C{}", f.n);
                break;
            case FactorKind::Infinite:
                out += "Z";
                break;
            case FactorKind::ZxC2:
                out += "ZxC2";
                break;
        }
        out += "[" + fmt::format("{}", fmt::join(f.names, ",")) + "]";
    }
    return out;
}

void GroupSpec::validate() const {
    std::set<std::string> seen;
    for (const auto& f : factors) {
        if (f.kind == FactorKind::Cyclic && f.n < 2) throw Error(fmt::format("cyclic factor of order {} (need n >= 2)", f.n));
        size_t want = f.kind == FactorKind::ZxC2 ? 2 : 1;
        if (f.names.size() != want) throw Error("wrong number of generator names for factor");
        for (const auto& n : f.names) {
            if (n.empty() || !(std::isalpha(static_cast<unsigned char>(n[0])) || n[0] == '_'))
                throw Error(fmt::format("bad generator name '{}'", n));
            if (!seen.insert(n).second) throw Error(fmt::format("duplicate generator name '{}'", n));
        }
    }
}

GroupPtr make_group(GroupSpec spec) {
    spec.validate();
    return std::make_shared<const GroupSpec>(std::move(spec));
}

Word word_mul(const Word& u, const Word& v, const GroupSpec& G) {
    Word r = u;
    for (const auto& s : v) {
        if (!r.empty() && r.back().factor == s.factor) {
            Syllable c = combine(r.back(), s, G.factors[s.factor]);
            if (syllable_is_identity(c))
                r.pop_back();
            else
                r.back() = std::move(c);
        } else {
            r.push_back(s);
        }
    }
    return r;
}

Word word_inv(const Word& u, const GroupSpec& G) {
    Word r(u.rbegin(), u.rend());
    for (auto& s : r) {
        const auto& f = G.factors[s.factor];
        if (f.kind == FactorKind::Cyclic)
            s.k = (f.n - s.k) % f.n;
        else
            s.k = -s.k;
    }
    return r;
}

bool word_less(const Word& u, const Word& v) {
    if (u.size() != v.size()) return u.size() < v.size();
    for (size_t i = 0; i < u.size(); ++i) {
        int c = cmp_syllable(u[i], v[i]);
        if (c) return c < 0;
    }
    return false;
}

std::string render_word(const Word& u, const GroupSpec& G) {
    if (u.empty()) return "1";
    std::vector<std::string> parts;
    for (const auto& s : u) {
        const auto& f = G.factors[s.factor];
        if (f.kind == FactorKind::ZxC2) {
            if (s.k != 0) parts.push_back(pow_str(f.names[0], s.k));
            if (s.eps) parts.push_back(f.names[1]);
        } else {
            parts.push_back(pow_str(f.names[0], s.k));
        }
    }
    return fmt::format("{}", fmt::join(parts, "*"));
}

int syllable_length(const Word& u) { return static_cast<int>(u.size()); }

mpz_class max_exponent(const Word& u, const GroupSpec& G) {
    mpz_class m = 0;
    for (const auto& s : u)
        if (G.factors[s.factor].kind != FactorKind::Cyclic && abs(s.k) > m) m = abs(s.k);
    return m;
}

bool is_finite_order(const Word& u, const GroupSpec& G) {
    // In a free product an element has finite order iff it is conjugate into a
    // finite factor subgroup; cyclically reduce first.
    Word w = u;
    while (w.size() >= 2 && w.front().factor == w.back().factor) {
        Word head{w.back()};
        Word mid(w.begin(), w.end() - 1);
        w = word_mul(head, mid, G);
    }
    if (w.empty()) return true;
    if (w.size() > 1) return false;
    const auto& s = w[0];
    const auto& f = G.factors[s.factor];
    if (f.kind == FactorKind::Cyclic) return true;
    if (f.kind == FactorKind::ZxC2) return s.k == 0;
    return false;
}

// ---- characters ----

Character::Character(GroupPtr G, std::vector<int> values) : G_(std::move(G)), v_(std::move(values)) {
    if (static_cast<int>(v_.size()) != G_->num_generators()) throw Error("character has wrong number of values");
    for (int g = 0; g < static_cast<int>(v_.size()); ++g) {
        if (v_[g] != 1 && v_[g] != -1) throw Error("character values must be +1 or -1");
        auto [f, r] = G_->generator(g);
        const auto& fac = G_->factors[f];
        if (fac.kind == FactorKind::Cyclic && fac.n % 2 == 1 && v_[g] == -1)
            throw Error(fmt::format("character value -1 on generator '{}' of odd order {} is not a homomorphism",
                                    fac.names[0], fac.n));
    }
    int base = 0;
    for (const auto& f : G_->factors) {
        first_.push_back(base);
        base += static_cast<int>(f.names.size());
    }
}

Character Character::trivial(GroupPtr G) {
    int n = G->num_generators();
    return Character(std::move(G), std::vector<int>(n, 1));
}

int Character::eval(const Word& u) const {
    int r = 1;
    for (const auto& s : u) {
        int g = first_[s.factor];
        if (mpz_odd_p(s.k.get_mpz_t())) r *= v_[g];
        if (s.eps) r *= v_[g + 1];
    }
    return r;
}

bool Character::is_trivial() const {
    return std::all_of(v_.begin(), v_.end(), [](int x) { return x == 1; });
}

Character Character::operator*(const Character& o) const {
    if (!(*G_ == *o.G_)) throw Error("characters over different groups");
    std::vector<int> r(v_.size());
    for (size_t i = 0; i < v_.size(); ++i) r[i] = v_[i] * o.v_[i];
    return Character(G_, r);
}

std::string Character::render() const {
    std::vector<std::string> parts;
    for (int g = 0; g < static_cast<int>(v_.size()); ++g)
        parts.push_back(fmt::format("{}={}", G_->generator_name(g), v_[g] > 0 ? "+1" : "-1"));
    return fmt::format("{}", fmt::join(parts, ","));
}

// ---- ring elements ----

RingElt::RingElt(GroupPtr G, const mpz_class& c) : G_(std::move(G)) {
    if (c != 0) t_[Word{}] = c;
}

RingElt RingElt::word(GroupPtr G, const Word& w, const mpz_class& c) {
    RingElt r(std::move(G));
    r.add_term(w, c);
    return r;
}

RingElt RingElt::generator(GroupPtr G, int gen) {
    Word w = G->generator_word(gen);
    return word(std::move(G), w);
}

mpz_class RingElt::coeff(const Word& w) const {
    auto it = t_.find(w);
    return it == t_.end() ? mpz_class(0) : it->second;
}

void RingElt::add_term(const Word& w, const mpz_class& c) {
    if (c == 0) return;
    auto [it, fresh] = t_.try_emplace(w, c);
    if (!fresh) {
        it->second += c;
        if (it->second == 0) t_.erase(it);
    }
}

void RingElt::check_same(const RingElt& o) const {
    if (G_ == o.G_) return;
    if (!G_ || !o.G_) throw Error("ring element without a group");
    if (!(*G_ == *o.G_)) throw Error("ring elements over different groups");
}

RingElt RingElt::operator+(const RingElt& o) const {
    RingElt r = *this;
    r += o;
    return r;
}

RingElt& RingElt::operator+=(const RingElt& o) {
    check_same(o);
    for (const auto& [w, c] : o.t_) add_term(w, c);
    return *this;
}

RingElt RingElt::operator-() const {
    RingElt r = *this;
    for (auto& [w, c] : r.t_) c = -c;
    return r;
}

RingElt RingElt::operator-(const RingElt& o) const { return *this + (-o); }

RingElt RingElt::operator*(const RingElt& o) const { return ring_mul(*this, o); }

RingElt RingElt::operator*(const mpz_class& c) const {
    RingElt r(G_);
    if (c == 0) return r;
    r.t_ = t_;
    for (auto& [w, x] : r.t_) x *= c;
    return r;
}

bool RingElt::operator==(const RingElt& o) const {
    if (t_.empty() && o.t_.empty()) return true;
    check_same(o);
    return t_ == o.t_;
}

std::string RingElt::render() const {
    if (t_.empty()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [w, c] : t_) {
        mpz_class a = abs(c);
        if (first)
            out += c < 0 ? "-" : "";
        else
            out += c < 0 ? " - " : " + ";
        first = false;
        if (w.empty())
            out += a.get_str();
        else if (a == 1)
            out += render_word(w, *G_);
        else
            out += a.get_str() + "*" + render_word(w, *G_);
    }
    return out;
}

RingElt ring_mul(const RingElt& x, const RingElt& y) {
    if (x.is_zero() || y.is_zero()) return RingElt(x.group() ? x.group() : y.group());
    if (!(*x.group() == *y.group())) throw Error("ring_mul: elements over different groups");
    const GroupSpec& G = *x.group();
    RingElt r(x.group());
    for (const auto& [u, a] : x.terms())
        for (const auto& [v, b] : y.terms()) r.add_term(word_mul(u, v, G), a * b);
    return r;
}

RingElt involute(const RingElt& x, const Character& w) {
    RingElt r(x.group());
    for (const auto& [u, c] : x.terms()) r.add_term(word_inv(u, *x.group()), w.eval(u) * c);
    return r;
}

mpz_class augment(const RingElt& x, const Character& v) {
    mpz_class s = 0;
    for (const auto& [u, c] : x.terms()) s += v.eval(u) * c;
    return s;
}

mpz_class augment(const RingElt& x) {
    mpz_class s = 0;
    for (const auto& [u, c] : x.terms()) s += c;
    return s;
}

RingElt omega(const RingElt& x, const Character& w) {
    RingElt r(x.group());
    for (const auto& [u, c] : x.terms()) r.add_term(u, w.eval(u) * c);
    return r;
}

// ---- matrices ----

RingMatrix::RingMatrix(GroupPtr G_, int r, int c) : G(std::move(G_)), rows(r), cols(c) {
    a.assign(static_cast<size_t>(r) * c, RingElt(G));
}

bool RingMatrix::is_zero() const {
    return std::all_of(a.begin(), a.end(), [](const RingElt& x) { return x.is_zero(); });
}

bool RingMatrix::operator==(const RingMatrix& o) const {
    return rows == o.rows && cols == o.cols && a == o.a;
}

std::string RingMatrix::render() const {
    std::vector<std::string> rs;
    for (int i = 0; i < rows; ++i) {
        std::vector<std::string> es;
        for (int j = 0; j < cols; ++j) es.push_back((*this)(i, j).render());
        rs.push_back("[" + fmt::format("{}", fmt::join(es, ", ")) + "]");
    }
    return "[" + fmt::format("{}", fmt::join(rs, ", ")) + "]";
}

RingMatrix operator*(const RingMatrix& x, const RingMatrix& y) {
    if (x.cols != y.rows) throw Error(fmt::format("matrix shape mismatch {}x{} * {}x{}", x.rows, x.cols, y.rows, y.cols));
    RingMatrix r(x.G ? x.G : y.G, x.rows, y.cols);
    for (int i = 0; i < x.rows; ++i)
        for (int k = 0; k < x.cols; ++k) {
            const RingElt& a = x(i, k);
            if (a.is_zero()) continue;
            for (int j = 0; j < y.cols; ++j) r(i, j) += ring_mul(a, y(k, j));
        }
    return r;
}

RingMatrix conj_transpose(const RingMatrix& m, const Character& w) {
    RingMatrix r(m.G, m.cols, m.rows);
    for (int i = 0; i < m.rows; ++i)
        for (int j = 0; j < m.cols; ++j) r(j, i) = involute(m(i, j), w);
    return r;
}

std::vector<Word> elements(const GroupSpec& G) {
    if (!G.finite()) throw Error("elements(): group " + G.render() + " is infinite");
    std::vector<Word> out{Word{}};
    if (G.factors.empty()) return out;
    for (int k = 1; k < G.factors[0].n; ++k) out.push_back({Syllable{0, k, 0}});
    return out;
}

}  // namespace q2
