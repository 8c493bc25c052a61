#include "platvol/free_group.hpp"

#include <algorithm>
#include <cstdlib>
#include <sstream>
#include <utility>

namespace platvol {

namespace {

void check_letter(int rank, const Letter& l) {
    if (l.gen < 1 || l.gen > rank) throw RankMismatch("generator index out of range");
    if (l.exp != 1 && l.exp != -1) throw RankMismatch("exponent must be +1 or -1");
}

}  // namespace

FreeWord::FreeWord(int rank, const std::vector<Letter>& letters) : rank_(rank) {
    for (const auto& l : letters) append(l);
}

FreeWord FreeWord::generator(int rank, int gen, int exp) {
    FreeWord w(rank);
    w.append(Letter{gen, exp});
    return w;
}

FreeWord FreeWord::parse(int rank, const std::string& text) {
    FreeWord w(rank);
    std::istringstream in(text);
    std::string tok;
    while (in >> tok) {
        std::size_t p = 0;
        while (p < tok.size() && !(tok[p] >= '0' && tok[p] <= '9')) ++p;
        if (p == tok.size()) throw ParseError("bad letter '" + tok + "'");
        int exp = 1;
        auto caret = tok.find('^', p);
        std::string num = tok.substr(p, caret == std::string::npos ? std::string::npos : caret - p);
        if (caret != std::string::npos) {
            std::string e = tok.substr(caret + 1);
            if (e == "-1") exp = -1;
            else if (e == "1" || e == "+1") exp = 1;
            else throw ParseError("bad exponent in '" + tok + "'");
        }
        w.append(Letter{std::stoi(num), exp});
    }
    return w;
}

void FreeWord::append(const Letter& l) {
    check_letter(rank_, l);
    if (!letters_.empty() && letters_.back().gen == l.gen && letters_.back().exp == -l.exp)
        letters_.pop_back();
    else
        letters_.push_back(l);
}

void FreeWord::append(const FreeWord& w, bool inverted) {
    if (w.rank_ != rank_) throw RankMismatch("rank mismatch");
    if (!inverted) {
        for (const auto& l : w.letters_) append(l);
    } else {
        for (auto it = w.letters_.rbegin(); it != w.letters_.rend(); ++it) append(Letter{it->gen, -it->exp});
    }
}

FreeWord FreeWord::inverse() const {
    FreeWord r(rank_);
    r.append(*this, true);
    return r;
}

std::vector<int> FreeWord::exponent_sums() const {
    std::vector<int> s(rank_, 0);
    for (const auto& l : letters_) s[l.gen - 1] += l.exp;
    return s;
}

std::string FreeWord::to_string(char prefix) const {
    if (letters_.empty()) return "1";
    std::ostringstream out;
    for (std::size_t i = 0; i < letters_.size(); ++i) {
        if (i) out << ' ';
        out << prefix << letters_[i].gen;
        if (letters_[i].exp < 0) out << "^-1";
    }
    return out.str();
}

FreeWord operator*(const FreeWord& u, const FreeWord& v) {
    if (u.rank() != v.rank()) throw RankMismatch("rank mismatch");
    FreeWord r = u;
    r.append(v);
    return r;
}

FreeEndomorphism::FreeEndomorphism(int rank, std::vector<FreeWord> images, std::size_t cap)
    : rank_(rank), images_(std::move(images)), cap_(cap) {
    if (static_cast<int>(images_.size()) != rank_) throw RankMismatch("need one image per generator");
    for (const auto& w : images_)
        if (w.rank() != rank_) throw RankMismatch("image rank mismatch");
}

FreeEndomorphism FreeEndomorphism::identity(int rank) {
    std::vector<FreeWord> im;
    for (int g = 1; g <= rank; ++g) im.push_back(FreeWord::generator(rank, g));
    return FreeEndomorphism(rank, std::move(im));
}

FreeWord FreeEndomorphism::apply(const FreeWord& w) const {
    if (w.rank() != rank_) throw RankMismatch("rank mismatch");
    FreeWord r(rank_);
    for (const auto& l : w.letters()) {
        r.append(images_[l.gen - 1], l.exp < 0);
        if (r.length() > cap_) throw WordTooLong("word length cap exceeded");
    }
    return r;
}

FreeEndomorphism compose(const FreeEndomorphism& f, const FreeEndomorphism& g) {
    if (f.rank() != g.rank()) throw RankMismatch("rank mismatch");
    std::vector<FreeWord> im;
    im.reserve(g.rank());
    for (const auto& w : g.images()) im.push_back(f.apply(w));
    return FreeEndomorphism(f.rank(), std::move(im), std::min(f.cap(), g.cap()));
}

void GroupRingElement::add(const FreeWord& w, long coeff) {
    if (coeff == 0) return;
    if (rank_ == 0) rank_ = w.rank();
    auto& c = terms_[w.letters()];
    c += coeff;
    if (c == 0) terms_.erase(w.letters());
}

long GroupRingElement::augmentation() const {
    long s = 0;
    for (const auto& [w, c] : terms_) s += c;
    return s;
}

GroupRingElement GroupRingElement::operator+(const GroupRingElement& o) const {
    GroupRingElement r = *this;
    if (r.rank_ == 0) r.rank_ = o.rank_;
    for (const auto& [w, c] : o.terms_) r.add(FreeWord(r.rank_, w), c);
    return r;
}

GroupRingElement GroupRingElement::left_multiply(const FreeWord& g) const {
    GroupRingElement r(g.rank());
    for (const auto& [w, c] : terms_) r.add(g * FreeWord(g.rank(), w), c);
    return r;
}

std::string GroupRingElement::to_string(char prefix) const {
    if (terms_.empty()) return "0";
    std::ostringstream out;
    bool first = true;
    for (const auto& [w, c] : terms_) {
        if (!first) out << (c > 0 ? " + " : " - ");
        else if (c < 0) out << "-";
        first = false;
        long a = std::labs(c);
        if (a != 1) out << a << "*";
        out << FreeWord(rank_, w).to_string(prefix);
    }
    return out.str();
}

GroupRingElement fox_derivative(const FreeWord& w, int j) {
    GroupRingElement r(w.rank());
    FreeWord prefix(w.rank());
    for (const auto& l : w.letters()) {
        if (l.gen == j) {
            if (l.exp > 0) {
                r.add(prefix, 1);
            } else {
                r.add(prefix * FreeWord::generator(w.rank(), j, -1), -1);
            }
        }
        prefix.append(l);
    }
    return r;
}

std::vector<std::vector<long>> abelianization_matrix(const FreeEndomorphism& phi) {
    std::vector<std::vector<long>> M;
    for (const auto& w : phi.images()) {
        auto s = w.exponent_sums();
        M.emplace_back(s.begin(), s.end());
    }
    return M;
}

long integer_determinant(std::vector<std::vector<long>> M) {
    // Bareiss elimination; every division is exact.
    const std::size_t n = M.size();
    if (n == 0) return 1;
    long sign = 1, prev = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (M[k][k] == 0) {
            std::size_t p = k + 1;
            while (p < n && M[p][k] == 0) ++p;
            if (p == n) return 0;
            std::swap(M[p], M[k]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j)
                M[i][j] = (M[i][j] * M[k][k] - M[i][k] * M[k][j]) / prev;
        prev = M[k][k];
    }
    return sign * M[n - 1][n - 1];
}

}  // namespace platvol
