#include "platvol/braid.hpp"

#include <cstdlib>
#include <numeric>
#include <sstream>

namespace platvol {

BraidWord::BraidWord(int strands_, std::vector<int> letters_) : strands(strands_), letters(std::move(letters_)) {
    if (strands < 2 || strands % 2) throw ParseError("strand count must be even and positive");
    for (int l : letters)
        if (l == 0 || std::abs(l) >= strands) throw ParseError("braid letter out of range");
}

BraidWord BraidWord::parse(const std::string& text) {
    auto colon = text.find(':');
    std::string head = text.substr(0, colon);
    auto b = head.find_first_of("Bb");
    if (colon == std::string::npos || b == std::string::npos) throw ParseError("expected 'B<2n>: i1 i2 ...'");
    int strands = 0;
    try {
        strands = std::stoi(head.substr(b + 1));
    } catch (const std::exception&) {
        throw ParseError("bad strand count in '" + text + "'");
    }
    std::vector<int> letters;
    std::istringstream in(text.substr(colon + 1));
    std::string tok;
    while (in >> tok) {
        try {
            std::size_t used = 0;
            letters.push_back(std::stoi(tok, &used));
            if (used != tok.size()) throw ParseError("bad letter '" + tok + "'");
        } catch (const std::invalid_argument&) {
            throw ParseError("bad letter '" + tok + "'");
        }
    }
    return BraidWord(strands, std::move(letters));
}

std::string BraidWord::to_string() const {
    std::ostringstream out;
    out << 'B' << strands << ':';
    for (int l : letters) out << ' ' << l;
    return out.str();
}

BraidWord BraidWord::inverse() const {
    std::vector<int> r(letters.rbegin(), letters.rend());
    for (int& l : r) l = -l;
    return BraidWord(strands, std::move(r));
}

BraidWord operator*(const BraidWord& a, const BraidWord& b) {
    if (a.strands != b.strands) throw RankMismatch("strand count mismatch");
    std::vector<int> l = a.letters;
    l.insert(l.end(), b.letters.begin(), b.letters.end());
    return BraidWord(a.strands, std::move(l));
}

FreeEndomorphism artin_action(const BraidWord& b, std::size_t cap) {
    const int m = b.strands;
    FreeEndomorphism phi = FreeEndomorphism::identity(m);
    for (int l : b.letters) {
        int i = std::abs(l);
        std::vector<FreeWord> im = FreeEndomorphism::identity(m).images();
        if (l > 0) {
            im[i - 1] = FreeWord(m, {{i, 1}, {i + 1, 1}, {i, -1}});
            im[i] = FreeWord::generator(m, i);
        } else {
            im[i - 1] = FreeWord::generator(m, i + 1);
            im[i] = FreeWord(m, {{i + 1, -1}, {i, 1}, {i + 1, 1}});
        }
        phi = compose(phi, FreeEndomorphism(m, std::move(im), cap));
    }
    return phi;
}

std::vector<int> braid_permutation(const BraidWord& b) {
    // Track strands directly instead of reading middle letters of long words.
    std::vector<int> at(b.strands);  // at[pos] = level-1 index of the strand currently at pos
    std::iota(at.begin(), at.end(), 0);
    // Letters act from the right (bottom) upwards.
    for (auto it = b.letters.rbegin(); it != b.letters.rend(); ++it) {
        int i = std::abs(*it) - 1;
        std::swap(at[i], at[i + 1]);
    }
    std::vector<int> perm(b.strands);
    for (int pos = 0; pos < b.strands; ++pos) perm[at[pos]] = pos;
    return perm;
}

int plat_components(const BraidWord& b) {
    const int m = b.strands;
    auto perm = braid_permutation(b);
    // Nodes 0..m-1 are bottom positions, m..2m-1 top positions.
    std::vector<int> parent(2 * m);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    auto join = [&](int x, int y) { parent[find(x)] = find(y); };
    for (int j = 0; j < m; ++j) join(j, m + perm[j]);
    for (int k = 0; k < m; k += 2) {
        join(k, k + 1);
        join(m + k, m + k + 1);
    }
    int c = 0;
    for (int x = 0; x < 2 * m; ++x) c += find(x) == x;
    return c;
}

PlatPresentation epsilon_signs(const BraidWord& b, int orientation) {
    if (plat_components(b) != 1) throw NotAKnot("plat closure is not a knot: " + b.to_string());
    const int m = b.strands, n = m / 2;
    PlatPresentation p;
    p.braid = b;
    p.perm = braid_permutation(b);
    p.orientation = orientation >= 0 ? 1 : -1;
    std::vector<int> inv(m);
    for (int j = 0; j < m; ++j) inv[p.perm[j]] = j;
    // Direction of travel at each bottom position: +1 going down into the caps.
    std::vector<int> d1(m, 0);
    int pos = 0;
    d1[0] = 1;
    while (true) {
        int partner = pos ^ 1;
        d1[partner] = -1;
        int top = p.perm[partner];
        pos = inv[top ^ 1];
        if (pos == 0) break;
        d1[pos] = 1;
    }
    std::vector<int> d2(m);
    for (int j = 0; j < m; ++j) d2[p.perm[j]] = d1[j];
    for (int k = 0; k < n; ++k) {
        p.eps1.push_back(p.orientation * d1[2 * k]);
        p.eps2.push_back(p.orientation * d2[2 * k]);
    }
    return p;
}

FreeEndomorphism lambda_map(const PlatPresentation& plat, int side) {
    const int m = plat.strands(), n = plat.n();
    const auto& eps = side == 1 ? plat.eps1 : plat.eps2;
    std::vector<FreeWord> im;
    for (int j = 0; j < m; ++j) {
        int k = j / 2;
        int e = (j % 2 == 0) ? eps[k] : -eps[k];
        im.push_back(FreeWord::generator(m, (side == 1 ? 0 : n) + k + 1, e));
    }
    return FreeEndomorphism(m, std::move(im));
}

std::vector<FreeWord> kappa_words(const PlatPresentation& plat, int side) {
    FreeEndomorphism lam = lambda_map(plat, side);
    std::vector<FreeWord> out;
    const int m = plat.strands();
    bool direct = (plat.splitting == Splitting::Standard) ? side == 1 : side == 2;
    if (direct) {
        for (int j = 1; j <= m; ++j) out.push_back(lam.image(j));
        return out;
    }
    FreeEndomorphism phi = plat.splitting == Splitting::Standard ? artin_action(plat.braid)
                                                                 : artin_action(plat.braid.inverse());
    for (int j = 1; j <= m; ++j) out.push_back(lam.apply(phi.image(j)));
    return out;
}

FreeWord kappa_word(const PlatPresentation& plat, int side, int j) { return kappa_words(plat, side).at(j - 1); }

KnotGroupPresentation wirtinger_presentation(const PlatPresentation& plat) {
    KnotGroupPresentation g;
    g.generators = plat.strands();
    auto k1 = kappa_words(plat, 1), k2 = kappa_words(plat, 2);
    for (int j = 0; j + 1 < plat.strands(); ++j) g.relators.push_back(k1[j] * k2[j].inverse());
    g.meridian = 1;
    return g;
}

BraidWord h_generator(HildenGenerator type, int strands, int k) {
    switch (type) {
        case HildenGenerator::Sigma1: return BraidWord(strands, {1});
        case HildenGenerator::Sigma2Sigma1Sq: return BraidWord(strands, {2, 1, 1, 2});
        case HildenGenerator::Swap: return BraidWord(strands, {2 * k, 2 * k - 1, 2 * k + 1, 2 * k});
    }
    throw DomainError("unknown generator");
}

namespace {

PlatPresentation rebuild(const BraidWord& b, const PlatPresentation& like) {
    PlatPresentation p = epsilon_signs(b, like.orientation);
    p.splitting = like.splitting;
    return p;
}

}  // namespace

PlatPresentation stabilize(const PlatPresentation& p) {
    BraidWord b(p.strands() + 2, p.braid.letters);
    b.letters.push_back(p.strands());
    return rebuild(b, p);
}

PlatPresentation multiply_left(const BraidWord& xi, const PlatPresentation& p) { return rebuild(xi * p.braid, p); }

PlatPresentation multiply_right(const PlatPresentation& p, const BraidWord& xi) { return rebuild(p.braid * xi, p); }

PlatPresentation mirror(const PlatPresentation& p) {
    BraidWord b = p.braid;
    for (int& l : b.letters) l = -l;
    return rebuild(b, p);
}

PlatPresentation reverse_orientation(const PlatPresentation& p) {
    PlatPresentation r = epsilon_signs(p.braid, -p.orientation);
    r.splitting = p.splitting;
    return r;
}

PlatPresentation with_splitting(const PlatPresentation& p, Splitting s) {
    PlatPresentation r = p;
    r.splitting = s;
    return r;
}

PlatPresentation connected_sum(const PlatPresentation& a, const PlatPresentation& b) {
    const int n = a.n(), m = b.n();
    std::vector<int> letters = a.braid.letters;
    for (int l : b.braid.letters) letters.push_back(l > 0 ? l + 2 * (n - 1) : l - 2 * (n - 1));
    return epsilon_signs(BraidWord(2 * (n + m - 1), std::move(letters)), a.orientation);
}

bool half_braid_membership(const BraidWord& xi) {
    const int m = xi.strands;
    std::vector<FreeWord> im;
    for (int j = 0; j < m; ++j) im.push_back(FreeWord::generator(m, j / 2 + 1, j % 2 == 0 ? 1 : -1));
    FreeEndomorphism lam(m, std::move(im));
    FreeEndomorphism phi = artin_action(xi);
    for (int k = 1; 2 * k <= m; ++k) {
        FreeWord pair = phi.image(2 * k - 1) * phi.image(2 * k);
        if (!lam.apply(pair).empty()) return false;
    }
    return true;
}

}  // namespace platvol
