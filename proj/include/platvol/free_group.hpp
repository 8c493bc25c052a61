#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "platvol/errors.hpp"

namespace platvol {

struct Letter {
    int gen;  // 1-based
    int exp;  // +1 or -1
    bool operator==(const Letter& o) const { return gen == o.gen && exp == o.exp; }
    bool operator<(const Letter& o) const { return gen != o.gen ? gen < o.gen : exp < o.exp; }
};

inline constexpr std::size_t kDefaultWordCap = 1000000;

// Freely reduced word in the free group of the given rank.
class FreeWord {
public:
    FreeWord() = default;
    explicit FreeWord(int rank) : rank_(rank) {}
    FreeWord(int rank, const std::vector<Letter>& letters);

    static FreeWord generator(int rank, int gen, int exp = 1);
    // "s1 s2^-1 s3"; the letter prefix is ignored, so "t1 t2^-1" also parses.
    static FreeWord parse(int rank, const std::string& text);

    int rank() const { return rank_; }
    const std::vector<Letter>& letters() const { return letters_; }
    std::size_t length() const { return letters_.size(); }
    bool empty() const { return letters_.empty(); }

    FreeWord inverse() const;
    // Exponent sum of each generator.
    std::vector<int> exponent_sums() const;
    std::string to_string(char prefix = 's') const;

    bool operator==(const FreeWord& o) const { return rank_ == o.rank_ && letters_ == o.letters_; }
    bool operator!=(const FreeWord& o) const { return !(*this == o); }
    bool operator<(const FreeWord& o) const { return letters_ < o.letters_; }

    void append(const Letter& l);
    void append(const FreeWord& w, bool inverted = false);

private:
    int rank_ = 0;
    std::vector<Letter> letters_;
};

FreeWord operator*(const FreeWord& u, const FreeWord& v);

// Endomorphism given by the images of the generators.
class FreeEndomorphism {
public:
    FreeEndomorphism() = default;
    FreeEndomorphism(int rank, std::vector<FreeWord> images, std::size_t cap = kDefaultWordCap);
    static FreeEndomorphism identity(int rank);

    int rank() const { return rank_; }
    const FreeWord& image(int gen) const { return images_.at(gen - 1); }
    const std::vector<FreeWord>& images() const { return images_; }

    FreeWord apply(const FreeWord& w) const;
    bool operator==(const FreeEndomorphism& o) const { return images_ == o.images_; }
    bool operator!=(const FreeEndomorphism& o) const { return !(*this == o); }
    std::size_t cap() const { return cap_; }

private:
    int rank_ = 0;
    std::vector<FreeWord> images_;
    std::size_t cap_ = kDefaultWordCap;
};

// (f o g)(x) = f(g(x))
FreeEndomorphism compose(const FreeEndomorphism& f, const FreeEndomorphism& g);

// Integer group ring Z[F], terms kept in canonical (sorted) order.
class GroupRingElement {
public:
    GroupRingElement() = default;
    explicit GroupRingElement(int rank) : rank_(rank) {}

    void add(const FreeWord& w, long coeff);
    const std::map<std::vector<Letter>, long>& terms() const { return terms_; }
    int rank() const { return rank_; }
    long augmentation() const;
    bool operator==(const GroupRingElement& o) const { return terms_ == o.terms_; }
    GroupRingElement operator+(const GroupRingElement& o) const;
    // Left multiplication by a group element.
    GroupRingElement left_multiply(const FreeWord& g) const;
    std::string to_string(char prefix = 's') const;

private:
    int rank_ = 0;
    std::map<std::vector<Letter>, long> terms_;
};

// d w / d s_j with the Fox axioms.
GroupRingElement fox_derivative(const FreeWord& w, int j);

// Entry (i, j): augmentation of d phi(s_i) / d s_j.
std::vector<std::vector<long>> abelianization_matrix(const FreeEndomorphism& phi);

// Exact integer determinant (fraction-free elimination).
long integer_determinant(std::vector<std::vector<long>> M);

}  // namespace platvol
