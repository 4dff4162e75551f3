#ifndef CODESENSE_GF2_HPP
#define CODESENSE_GF2_HPP

#include <bit>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "codesense/errors.hpp"

namespace codesense {

/// Bit-packed matrix over F2. Rows are stored as little-endian 64-bit words;
/// the normative serialized form is row-major, MSB-first hex (gf2-matrix/v1).
class BinaryMatrix {
  public:
    BinaryMatrix(std::size_t rows, std::size_t cols);

    static BinaryMatrix identity(std::size_t n);
    /// Test/CLI helper: rows given as strings of '0'/'1', e.g. "1100".
    static BinaryMatrix from_bit_rows(const std::vector<std::string>& rows);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    std::size_t words_per_row() const { return wpr_; }

    bool get(std::size_t i, std::size_t j) const {
        return (row_ptr(i)[j >> 6] >> (j & 63)) & 1u;
    }
    void set(std::size_t i, std::size_t j, bool v) {
        std::uint64_t mask = std::uint64_t{1} << (j & 63);
        if (v)
            row_mut(i)[j >> 6] |= mask;
        else
            row_mut(i)[j >> 6] &= ~mask;
    }

    const std::uint64_t* row_ptr(std::size_t i) const { return words_.data() + i * wpr_; }
    std::uint64_t* row_mut(std::size_t i) { return words_.data() + i * wpr_; }
    std::span<const std::uint64_t> row(std::size_t i) const { return {row_ptr(i), wpr_}; }

    void xor_rows(std::size_t dst, std::size_t src);
    void swap_rows(std::size_t a, std::size_t b);
    std::size_t row_weight(std::size_t i) const;
    bool row_is_zero(std::size_t i) const;

    /// Serialized bytes of one row, MSB-first, ceil(cols/8) bytes.
    std::vector<std::uint8_t> row_bytes(std::size_t i) const;
    void set_row_from_bytes(std::size_t i, std::span<const std::uint8_t> bytes);

    std::string row_hex(std::size_t i) const;
    std::string row_bits(std::size_t i) const;

    nlohmann::json to_json() const;
    static BinaryMatrix from_json(const nlohmann::json& j);

    friend bool operator==(const BinaryMatrix& a, const BinaryMatrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.words_ == b.words_;
    }

  private:
    std::size_t rows_;
    std::size_t cols_;
    std::size_t wpr_;
    std::vector<std::uint64_t> words_;
};

/// Length-p bit vector with its Hamming weight cached.
class Codeword {
  public:
    Codeword(std::span<const std::uint64_t> words, std::size_t length);

    std::size_t length() const { return length_; }
    std::size_t weight() const { return weight_; }
    bool get(std::size_t j) const { return (words_[j >> 6] >> (j & 63)) & 1u; }
    std::span<const std::uint64_t> words() const { return words_; }
    std::string bits() const;

    friend bool operator==(const Codeword& a, const Codeword& b) {
        return a.length_ == b.length_ && a.words_ == b.words_;
    }

  private:
    std::vector<std::uint64_t> words_;
    std::size_t length_;
    std::size_t weight_;
};

std::size_t popcount_words(std::span<const std::uint64_t> words);

/// F2 rank; the argument is reduced on a copy.
std::size_t rank(const BinaryMatrix& m);

/// Reduced row echelon form, zero rows dropped, rows ordered by pivot column.
BinaryMatrix rref(const BinaryMatrix& m);

/// Canonical generator of the nullspace code C(H): k = p - rank(H) rows in
/// reduced echelon form, so the result is a pure function of H.
/// Throws DegenerateCode when rank(H) = p.
BinaryMatrix generator_from_parity_check(const BinaryMatrix& h);

std::size_t hamming_distance(const Codeword& a, const Codeword& b);

/// Codeword for message u: row i of G participates iff bit (k-1-i) of u is
/// set, i.e. the message is read MSB-first across the rows.
Codeword encode(const BinaryMatrix& g, std::uint64_t u);

/// Visits the codewords of messages u in [first, last] in counting order.
/// Steps between consecutive messages cost one row XOR per flipped message
/// bit (amortized two per step), never a full re-encode.
/// f is called as f(u, std::span<const std::uint64_t> words).
template <typename F>
void visit_codewords(const BinaryMatrix& g, std::uint64_t first, std::uint64_t last, F&& f) {
    const std::size_t k = g.rows();
    const std::size_t wpr = g.words_per_row();
    std::vector<std::uint64_t> cur(wpr, 0);
    for (std::size_t i = 0; i < k; ++i)
        if ((first >> (k - 1 - i)) & 1u)
            for (std::size_t w = 0; w < wpr; ++w) cur[w] ^= g.row_ptr(i)[w];
    f(first, std::span<const std::uint64_t>(cur));
    for (std::uint64_t u = first + 1; u <= last; ++u) {
        std::uint64_t diff = (u - 1) ^ u;
        while (diff) {
            unsigned bit = static_cast<unsigned>(std::countr_zero(diff));
            diff &= diff - 1;
            const std::uint64_t* row = g.row_ptr(k - 1 - bit);
            for (std::size_t w = 0; w < wpr; ++w) cur[w] ^= row[w];
        }
        f(u, std::span<const std::uint64_t>(cur));
    }
}

/// Codewords u*G for u = 1..limit in canonical message order.
/// Throws LimitTooLarge when limit > 2^k - 1.
std::vector<Codeword> enumerate_codewords(const BinaryMatrix& g, std::uint64_t limit);

}  // namespace codesense

#endif
