#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <string_view>

namespace veerpoly {

// Permutation of {0,1,2,3}; i maps to img[i].
struct Perm4 {
    std::array<std::uint8_t, 4> img{0, 1, 2, 3};

    constexpr Perm4() = default;
    constexpr Perm4(int a, int b, int c, int d)
        : img{std::uint8_t(a), std::uint8_t(b), std::uint8_t(c), std::uint8_t(d)} {}

    constexpr int operator[](int i) const { return img[i]; }

    // a*b applies b first.
    constexpr Perm4 operator*(const Perm4& o) const {
        return Perm4(img[o.img[0]], img[o.img[1]], img[o.img[2]], img[o.img[3]]);
    }

    constexpr Perm4 inverse() const {
        Perm4 r;
        for (int i = 0; i < 4; ++i) r.img[img[i]] = std::uint8_t(i);
        return r;
    }

    constexpr int sign() const {
        int inv = 0;
        for (int i = 0; i < 4; ++i)
            for (int j = i + 1; j < 4; ++j)
                if (img[i] > img[j]) ++inv;
        return inv % 2 ? -1 : 1;
    }

    constexpr bool is_valid() const {
        int seen = 0;
        for (auto v : img) {
            if (v > 3) return false;
            seen |= 1 << v;
        }
        return seen == 15;
    }

    std::string str() const {
        std::string s(4, '0');
        for (int i = 0; i < 4; ++i) s[i] = char('0' + img[i]);
        return s;
    }

    // Position in the lexicographic listing of all 24 permutations.
    constexpr int lex_index() const {
        int idx = 0;
        int fact[4] = {6, 2, 1, 0};
        for (int i = 0; i < 3; ++i) {
            int smaller = 0;
            for (int j = i + 1; j < 4; ++j)
                if (img[j] < img[i]) ++smaller;
            idx += smaller * fact[i];
        }
        return idx;
    }

    static constexpr Perm4 from_lex_index(int idx) {
        std::array<int, 4> pool{0, 1, 2, 3};
        int fact[4] = {6, 2, 1, 1};
        Perm4 p;
        int n = 4;
        for (int i = 0; i < 4; ++i) {
            int q = idx / fact[i];
            idx %= fact[i];
            p.img[i] = std::uint8_t(pool[q]);
            for (int j = q; j + 1 < n; ++j) pool[j] = pool[j + 1];
            --n;
        }
        return p;
    }

    friend constexpr bool operator==(const Perm4&, const Perm4&) = default;
    friend constexpr auto operator<=>(const Perm4&, const Perm4&) = default;
};

// Edge slots 0..5 are the vertex pairs 01,02,03,12,13,23; slot k is opposite slot 5-k.
inline constexpr std::array<std::array<int, 2>, 6> kSlotVertices{{{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}};

constexpr int slot_of(int a, int b) {
    if (a > b) { int t = a; a = b; b = t; }
    if (a == 0) return b - 1;
    if (a == 1) return b + 1;
    return 5;
}

constexpr int opposite_slot(int k) { return 5 - k; }

// Pair index of a slot: 0 = {01,23}, 1 = {02,13}, 2 = {03,12}.
constexpr int pair_of_slot(int k) { return k < 3 ? k : 5 - k; }

constexpr bool face_contains_slot(int face, int slot) {
    return kSlotVertices[slot][0] != face && kSlotVertices[slot][1] != face;
}

}  // namespace veerpoly
