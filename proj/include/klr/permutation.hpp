/*
 * permutation.hpp
 * ---------------
 * Symmetric group S_m: composition, enumeration, reduced words, Bruhat order.
 *
 * A Perm stores one-line notation 0-based: img[k] = w(k+1) - 1. Composition
 * is (v * w)(k) = v(w(k)), matching the convention that products of simple
 * transpositions read left to right act right to left on positions.
 * Reduced-word letters are 1-based: letter j stands for the transposition of
 * positions j, j+1.
 */
#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace klr {

class Perm {
  public:
    Perm() = default;
    explicit Perm(int m) : img_(m) { std::iota(img_.begin(), img_.end(), 0); }
    explicit Perm(std::vector<int> img) : img_(std::move(img)) {}

    static Perm identity(int m) { return Perm(m); }

    // Simple transposition s_j of positions j, j+1 (1-based j, 1 <= j < m).
    static Perm simple(int m, int j) {
        Perm w(m);
        std::swap(w.img_[j - 1], w.img_[j]);
        return w;
    }

    int size() const { return static_cast<int>(img_.size()); }

    // w(k) for 1-based k.
    int operator()(int k) const { return img_[k - 1] + 1; }

    bool operator==(const Perm& o) const { return img_ == o.img_; }
    bool operator!=(const Perm& o) const { return !(*this == o); }
    bool operator<(const Perm& o) const { return img_ < o.img_; }

    // (v * w)(k) = v(w(k)).
    Perm operator*(const Perm& w) const {
        std::vector<int> r(img_.size());
        for (std::size_t k = 0; k < img_.size(); ++k) r[k] = img_[w.img_[k]];
        return Perm(std::move(r));
    }

    Perm inverse() const {
        std::vector<int> r(img_.size());
        for (std::size_t k = 0; k < img_.size(); ++k) r[img_[k]] = static_cast<int>(k);
        return Perm(std::move(r));
    }

    // Coxeter length = inversion count.
    int length() const {
        int n = 0;
        for (std::size_t a = 0; a < img_.size(); ++a)
            for (std::size_t b = a + 1; b < img_.size(); ++b)
                if (img_[a] > img_[b]) ++n;
        return n;
    }

    bool is_identity() const {
        for (std::size_t k = 0; k < img_.size(); ++k)
            if (img_[k] != static_cast<int>(k)) return false;
        return true;
    }

    std::string to_string() const {
        std::string s = "[";
        for (std::size_t k = 0; k < img_.size(); ++k) {
            if (k) s += ",";
            s += std::to_string(img_[k] + 1);
        }
        return s + "]";
    }

    const std::vector<int>& one_line() const { return img_; }

  private:
    std::vector<int> img_;
};

inline std::vector<Perm> all_permutations(int m) {
    std::vector<int> img(m);
    std::iota(img.begin(), img.end(), 0);
    std::vector<Perm> out;
    do {
        out.emplace_back(img);
    } while (std::next_permutation(img.begin(), img.end()));
    return out;
}

// Lexicographically smallest reduced word, letters 1-based, leftmost letter
// first: w = s_{word[0]} * s_{word[1]} * ... * s_{word.back()}.
inline std::vector<int> canonical_reduced_word(const Perm& w) {
    std::vector<int> word;
    Perm u = w;
    while (!u.is_identity()) {
        int j = 0;
        for (int t = 1; t < u.size(); ++t) {
            Perm su = Perm::simple(u.size(), t) * u;
            if (su.length() < u.length()) {
                j = t;
                u = su;
                break;
            }
        }
        if (j == 0) throw std::logic_error("no descent on a non-identity permutation");
        word.push_back(j);
    }
    return word;
}

// Every reduced word of w (small m only; used by degree-independence checks).
inline void all_reduced_words_rec(const Perm& u, std::vector<int>& prefix,
                                  std::vector<std::vector<int>>& out) {
    if (u.is_identity()) {
        out.push_back(prefix);
        return;
    }
    for (int t = 1; t < u.size(); ++t) {
        Perm su = Perm::simple(u.size(), t) * u;
        if (su.length() < u.length()) {
            prefix.push_back(t);
            all_reduced_words_rec(su, prefix, out);
            prefix.pop_back();
        }
    }
}

inline std::vector<std::vector<int>> all_reduced_words(const Perm& w) {
    std::vector<std::vector<int>> out;
    std::vector<int> prefix;
    all_reduced_words_rec(w, prefix, out);
    return out;
}

// Bruhat order via the dominance criterion on rank matrices:
// u <= w  iff  #{k <= p : u(k) >= q} <= #{k <= p : w(k) >= q} for all p, q.
inline bool bruhat_leq(const Perm& u, const Perm& w) {
    int m = u.size();
    for (int p = 1; p <= m; ++p) {
        for (int q = 1; q <= m; ++q) {
            int cu = 0, cw = 0;
            for (int k = 1; k <= p; ++k) {
                if (u(k) >= q) ++cu;
                if (w(k) >= q) ++cw;
            }
            if (cu > cw) return false;
        }
    }
    return true;
}

inline bool bruhat_less(const Perm& u, const Perm& w) {
    return !(u == w) && bruhat_leq(u, w);
}

}  // namespace klr
