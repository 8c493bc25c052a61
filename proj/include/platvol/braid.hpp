#pragma once

#include <string>
#include <vector>

#include "platvol/free_group.hpp"

namespace platvol {

// Word in sigma_1 .. sigma_{2n-1}; a letter +i is sigma_i, -i is its inverse.
struct BraidWord {
    int strands = 2;
    std::vector<int> letters;

    BraidWord() = default;
    BraidWord(int strands_, std::vector<int> letters_);

    // "B4: 2 2 2"
    static BraidWord parse(const std::string& text);
    std::string to_string() const;
    BraidWord inverse() const;
    int n() const { return strands / 2; }

    bool operator==(const BraidWord& o) const { return strands == o.strands && letters == o.letters; }
};

BraidWord operator*(const BraidWord& a, const BraidWord& b);

// Artin convention: sigma_i sends s_i -> s_i s_{i+1} s_i^{-1}, s_{i+1} -> s_i,
// and phi_{ab} = phi_a o phi_b.
FreeEndomorphism artin_action(const BraidWord& b, std::size_t cap = kDefaultWordCap);

// perm[j] (0-based) = index of the generator conjugated in phi(s_{j+1}).
std::vector<int> braid_permutation(const BraidWord& b);

int plat_components(const BraidWord& b);

enum class Splitting { Standard, Alternate };

struct PlatPresentation {
    BraidWord braid;
    std::vector<int> perm;
    std::vector<int> eps1, eps2;  // epsilon^{(1)}_k, epsilon^{(2)}_k, k = 1..n (0-based storage)
    int orientation = 1;
    Splitting splitting = Splitting::Standard;

    int n() const { return braid.n(); }
    int strands() const { return braid.strands; }
};

// Throws NotAKnot unless the plat closure has one component.
PlatPresentation epsilon_signs(const BraidWord& b, int orientation = 1);
inline PlatPresentation make_plat(const std::string& text, int orientation = 1) {
    return epsilon_signs(BraidWord::parse(text), orientation);
}

// Word in the 2n t-generators: t^{(1)}_k is generator k, t^{(2)}_k is generator n + k.
FreeWord kappa_word(const PlatPresentation& plat, int side, int j);
std::vector<FreeWord> kappa_words(const PlatPresentation& plat, int side);

// lambda_i(s_{2k-1}) = t_k^{eps}, lambda_i(s_{2k}) = t_k^{-eps}, into the 2n t-generators.
FreeEndomorphism lambda_map(const PlatPresentation& plat, int side);

struct KnotGroupPresentation {
    int generators = 0;
    std::vector<FreeWord> relators;
    int meridian = 1;
};

KnotGroupPresentation wirtinger_presentation(const PlatPresentation& plat);

// Generators of the Hilden subgroup H_{2n}.
enum class HildenGenerator { Sigma1, Sigma2Sigma1Sq, Swap };
BraidWord h_generator(HildenGenerator type, int strands, int k = 1);

PlatPresentation stabilize(const PlatPresentation& p);
PlatPresentation multiply_left(const BraidWord& xi, const PlatPresentation& p);
PlatPresentation multiply_right(const PlatPresentation& p, const BraidWord& xi);
PlatPresentation mirror(const PlatPresentation& p);
PlatPresentation reverse_orientation(const PlatPresentation& p);
PlatPresentation with_splitting(const PlatPresentation& p, Splitting s);
PlatPresentation connected_sum(const PlatPresentation& a, const PlatPresentation& b);

bool half_braid_membership(const BraidWord& xi);

}  // namespace platvol
