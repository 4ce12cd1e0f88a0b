#pragma once

#include <gmpxx.h>

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "q2/error.hpp"

namespace q2 {

enum class FactorKind { Cyclic, Infinite, ZxC2 };

struct Factor {
    FactorKind kind;
    int n = 0;                       // order, Cyclic only
    std::vector<std::string> names;  // one name, or (t, T) for ZxC2
    bool operator==(const Factor&) const = default;
};

// One nontrivial element of a factor.  Cyclic: k in [1,n).  Infinite: k != 0.
// ZxC2: t^k T^eps with (k,eps) != (0,0).
struct Syllable {
    int factor = 0;
    mpz_class k;
    int eps = 0;
    bool operator==(const Syllable&) const = default;
};

using Word = std::vector<Syllable>;

struct GroupSpec {
    std::vector<Factor> factors;

    bool operator==(const GroupSpec&) const = default;

    int num_generators() const;
    // generator index -> (factor, role); role 1 is the T of a ZxC2 factor.
    std::pair<int, int> generator(int g) const;
    int generator_index(const std::string& name) const;  // -1 if unknown
    const std::string& generator_name(int g) const;
    Word generator_word(int g) const;

    bool finite() const;
    long order() const;  // finite groups only
    bool trivial() const { return factors.empty(); }

    std::string render() const;
    void validate() const;
};

using GroupPtr = std::shared_ptr<const GroupSpec>;

// Text form: factor ('*' factor)*, factor = Cn | Z | ZxC2 with optional [names];
// "1" is the trivial group, Dinf abbreviates C2*C2.
GroupPtr parse_group(const std::string& text);
GroupPtr make_group(GroupSpec spec);

Word word_mul(const Word& u, const Word& v, const GroupSpec& G);
Word word_inv(const Word& u, const GroupSpec& G);
bool word_less(const Word& u, const Word& v);
std::string render_word(const Word& u, const GroupSpec& G);
int syllable_length(const Word& u);
// Largest |k| over Infinite/ZxC2 syllables.
mpz_class max_exponent(const Word& u, const GroupSpec& G);
// Elements of order 2 among finite-order syllables are detected by the caller.
bool is_finite_order(const Word& u, const GroupSpec& G);

struct WordLess {
    bool operator()(const Word& a, const Word& b) const { return word_less(a, b); }
};

class Character {
public:
    Character() = default;
    Character(GroupPtr G, std::vector<int> values);
    static Character trivial(GroupPtr G);

    const GroupPtr& group() const { return G_; }
    int operator[](int gen) const { return v_[gen]; }
    const std::vector<int>& values() const { return v_; }
    int eval(const Word& u) const;
    bool is_trivial() const;
    Character operator*(const Character& o) const;
    bool operator==(const Character& o) const { return v_ == o.v_ && *G_ == *o.G_; }
    std::string render() const;

private:
    GroupPtr G_;
    std::vector<int> v_;
    std::vector<int> first_;  // first generator index of each factor
};

// "t=+1,T=-1"; unnamed generators default to +1.
Character parse_character(const std::string& text, GroupPtr G);

class RingElt {
public:
    using Terms = std::map<Word, mpz_class, WordLess>;

    RingElt() = default;
    explicit RingElt(GroupPtr G) : G_(std::move(G)) {}
    RingElt(GroupPtr G, const mpz_class& c);
    static RingElt word(GroupPtr G, const Word& w, const mpz_class& c = 1);
    static RingElt generator(GroupPtr G, int gen);

    const GroupPtr& group() const { return G_; }
    const Terms& terms() const { return t_; }
    bool is_zero() const { return t_.empty(); }
    mpz_class coeff(const Word& w) const;
    void add_term(const Word& w, const mpz_class& c);

    RingElt operator+(const RingElt& o) const;
    RingElt operator-(const RingElt& o) const;
    RingElt operator-() const;
    RingElt operator*(const RingElt& o) const;
    RingElt operator*(const mpz_class& c) const;
    RingElt& operator+=(const RingElt& o);
    bool operator==(const RingElt& o) const;
    bool operator!=(const RingElt& o) const { return !(*this == o); }

    std::string render() const;

private:
    void check_same(const RingElt& o) const;
    GroupPtr G_;
    Terms t_;
};

RingElt ring_mul(const RingElt& x, const RingElt& y);
RingElt involute(const RingElt& x, const Character& w);
mpz_class augment(const RingElt& x, const Character& v);
mpz_class augment(const RingElt& x);
RingElt omega(const RingElt& x, const Character& w);

RingElt parse_ring_elt(const std::string& text, GroupPtr G);

// Dense matrices over ZG.  Row-vector convention: a map of free modules
// C -> C' is x |-> x * M, so M has rank C rows and rank C' columns.
struct RingMatrix {
    GroupPtr G;
    int rows = 0, cols = 0;
    std::vector<RingElt> a;

    RingMatrix() = default;
    RingMatrix(GroupPtr G_, int r, int c);
    RingElt& operator()(int i, int j) { return a[i * cols + j]; }
    const RingElt& operator()(int i, int j) const { return a[i * cols + j]; }
    bool is_zero() const;
    bool operator==(const RingMatrix& o) const;
    std::string render() const;
};

RingMatrix operator*(const RingMatrix& x, const RingMatrix& y);
RingMatrix conj_transpose(const RingMatrix& m, const Character& w);

// Parses "[[x, y], [z, w]]"; the empty matrix is written [] with the
// expected shape supplied by the caller.
RingMatrix parse_ring_matrix(const std::string& text, GroupPtr G, int rows = -1, int cols = -1);

// Finite groups: elements in canonical order and regular representation.
std::vector<Word> elements(const GroupSpec& G);

}  // namespace q2
