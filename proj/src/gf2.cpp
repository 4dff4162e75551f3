#include "codesense/gf2.hpp"

#include <algorithm>
#include <cctype>

#include <nlohmann/json.hpp>

namespace codesense {

namespace {

constexpr char kHexDigits[] = "0123456789abcdef";

int hex_value(char c) {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    if (c >= 'A' && c <= 'F') return c - 'A' + 10;
    return -1;
}

}  // namespace

BinaryMatrix::BinaryMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), wpr_((cols + 63) / 64), words_(rows * wpr_, 0) {
    if (rows == 0 || cols == 0) throw DomainError("matrix dimensions must be positive");
}

BinaryMatrix BinaryMatrix::identity(std::size_t n) {
    BinaryMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.set(i, i, true);
    return m;
}

BinaryMatrix BinaryMatrix::from_bit_rows(const std::vector<std::string>& rows) {
    if (rows.empty()) throw DomainError("no rows");
    BinaryMatrix m(rows.size(), rows[0].size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != m.cols()) throw LengthMismatch("ragged bit rows");
        for (std::size_t j = 0; j < m.cols(); ++j) {
            char c = rows[i][j];
            if (c != '0' && c != '1') throw DomainError("bit rows must be 0/1 strings");
            if (c == '1') m.set(i, j, true);
        }
    }
    return m;
}

void BinaryMatrix::xor_rows(std::size_t dst, std::size_t src) {
    std::uint64_t* d = row_mut(dst);
    const std::uint64_t* s = row_ptr(src);
    for (std::size_t w = 0; w < wpr_; ++w) d[w] ^= s[w];
}

void BinaryMatrix::swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    std::swap_ranges(row_mut(a), row_mut(a) + wpr_, row_mut(b));
}

std::size_t BinaryMatrix::row_weight(std::size_t i) const { return popcount_words(row(i)); }

bool BinaryMatrix::row_is_zero(std::size_t i) const {
    const std::uint64_t* r = row_ptr(i);
    for (std::size_t w = 0; w < wpr_; ++w)
        if (r[w]) return false;
    return true;
}

std::vector<std::uint8_t> BinaryMatrix::row_bytes(std::size_t i) const {
    std::size_t nbytes = (cols_ + 7) / 8;
    std::vector<std::uint8_t> out(nbytes, 0);
    for (std::size_t j = 0; j < cols_; ++j)
        if (get(i, j)) out[j / 8] |= static_cast<std::uint8_t>(0x80u >> (j % 8));
    return out;
}

void BinaryMatrix::set_row_from_bytes(std::size_t i, std::span<const std::uint8_t> bytes) {
    std::size_t nbytes = (cols_ + 7) / 8;
    if (bytes.size() != nbytes) throw LengthMismatch("row byte count mismatch");
    std::fill(row_mut(i), row_mut(i) + wpr_, 0);
    for (std::size_t j = 0; j < cols_; ++j)
        if (bytes[j / 8] & (0x80u >> (j % 8))) set(i, j, true);
    // unused trailing bits must be zero
    if (cols_ % 8) {
        std::uint8_t tail_mask = static_cast<std::uint8_t>(0xFFu >> (cols_ % 8));
        if (bytes[nbytes - 1] & tail_mask)
            throw MalformedPayload("nonzero padding bits in row", nbytes - 1);
    }
}

std::string BinaryMatrix::row_hex(std::size_t i) const {
    auto bytes = row_bytes(i);
    std::string out;
    out.reserve(bytes.size() * 2);
    for (std::uint8_t b : bytes) {
        out.push_back(kHexDigits[b >> 4]);
        out.push_back(kHexDigits[b & 0xF]);
    }
    return out;
}

std::string BinaryMatrix::row_bits(std::size_t i) const {
    std::string out(cols_, '0');
    for (std::size_t j = 0; j < cols_; ++j)
        if (get(i, j)) out[j] = '1';
    return out;
}

nlohmann::json BinaryMatrix::to_json() const {
    nlohmann::json j;
    j["format"] = "gf2-matrix/v1";
    j["rows"] = rows_;
    j["cols"] = cols_;
    auto data = nlohmann::json::array();
    for (std::size_t i = 0; i < rows_; ++i) data.push_back(row_hex(i));
    j["data"] = std::move(data);
    return j;
}

BinaryMatrix BinaryMatrix::from_json(const nlohmann::json& j) {
    if (!j.is_object() || j.value("format", "") != "gf2-matrix/v1")
        throw MalformedPayload("expected gf2-matrix/v1 object", 0);
    std::size_t rows = j.at("rows").get<std::size_t>();
    std::size_t cols = j.at("cols").get<std::size_t>();
    const auto& data = j.at("data");
    if (!data.is_array() || data.size() != rows)
        throw MalformedPayload("row count mismatch in gf2-matrix data", 0);
    BinaryMatrix m(rows, cols);
    std::size_t nbytes = (cols + 7) / 8;
    for (std::size_t i = 0; i < rows; ++i) {
        const std::string hex = data[i].get<std::string>();
        if (hex.size() != nbytes * 2)
            throw MalformedPayload("row " + std::to_string(i) + " has wrong hex length", i);
        std::vector<std::uint8_t> bytes(nbytes);
        for (std::size_t b = 0; b < nbytes; ++b) {
            int hi = hex_value(hex[2 * b]);
            int lo = hex_value(hex[2 * b + 1]);
            if (hi < 0 || lo < 0)
                throw MalformedPayload("bad hex digit in row " + std::to_string(i), 2 * b);
            bytes[b] = static_cast<std::uint8_t>((hi << 4) | lo);
        }
        m.set_row_from_bytes(i, bytes);
    }
    return m;
}

Codeword::Codeword(std::span<const std::uint64_t> words, std::size_t length)
    : words_(words.begin(), words.end()), length_(length), weight_(popcount_words(words)) {}

std::string Codeword::bits() const {
    std::string out(length_, '0');
    for (std::size_t j = 0; j < length_; ++j)
        if (get(j)) out[j] = '1';
    return out;
}

std::size_t popcount_words(std::span<const std::uint64_t> words) {
    std::size_t c = 0;
    for (std::uint64_t w : words) c += static_cast<std::size_t>(std::popcount(w));
    return c;
}

namespace {

// In-place reduction to reduced row echelon form; returns pivot columns.
std::vector<std::size_t> rref_in_place(BinaryMatrix& m) {
    std::vector<std::size_t> pivots;
    std::size_t row = 0;
    for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
        std::size_t sel = row;
        while (sel < m.rows() && !m.get(sel, col)) ++sel;
        if (sel == m.rows()) continue;
        m.swap_rows(row, sel);
        for (std::size_t i = 0; i < m.rows(); ++i)
            if (i != row && m.get(i, col)) m.xor_rows(i, row);
        pivots.push_back(col);
        ++row;
    }
    return pivots;
}

}  // namespace

std::size_t rank(const BinaryMatrix& m) {
    BinaryMatrix copy = m;
    return rref_in_place(copy).size();
}

BinaryMatrix rref(const BinaryMatrix& m) {
    BinaryMatrix copy = m;
    auto pivots = rref_in_place(copy);
    if (pivots.empty()) throw DegenerateCode("rref of zero matrix has no rows");
    BinaryMatrix out(pivots.size(), m.cols());
    for (std::size_t i = 0; i < pivots.size(); ++i)
        std::copy(copy.row_ptr(i), copy.row_ptr(i) + copy.words_per_row(), out.row_mut(i));
    return out;
}

BinaryMatrix generator_from_parity_check(const BinaryMatrix& h) {
    BinaryMatrix red = h;
    auto pivots = rref_in_place(red);
    const std::size_t p = h.cols();
    const std::size_t r = pivots.size();
    if (r == p) throw DegenerateCode("rank(H) = p: C(H) = {0} has no generator");
    std::vector<bool> is_pivot(p, false);
    for (std::size_t c : pivots) is_pivot[c] = true;

    BinaryMatrix basis(p - r, p);
    std::size_t bi = 0;
    for (std::size_t f = 0; f < p; ++f) {
        if (is_pivot[f]) continue;
        basis.set(bi, f, true);
        for (std::size_t i = 0; i < r; ++i)
            if (red.get(i, f)) basis.set(bi, pivots[i], true);
        ++bi;
    }
    // canonical form: reduced echelon, rows sorted by leading column
    return rref(basis);
}

std::size_t hamming_distance(const Codeword& a, const Codeword& b) {
    if (a.length() != b.length()) throw LengthMismatch("codeword lengths differ");
    auto wa = a.words();
    auto wb = b.words();
    std::size_t d = 0;
    for (std::size_t i = 0; i < wa.size(); ++i)
        d += static_cast<std::size_t>(std::popcount(wa[i] ^ wb[i]));
    return d;
}

Codeword encode(const BinaryMatrix& g, std::uint64_t u) {
    const std::size_t k = g.rows();
    std::vector<std::uint64_t> cur(g.words_per_row(), 0);
    for (std::size_t i = 0; i < k; ++i)
        if ((u >> (k - 1 - i)) & 1u)
            for (std::size_t w = 0; w < cur.size(); ++w) cur[w] ^= g.row_ptr(i)[w];
    return Codeword(cur, g.cols());
}

std::vector<Codeword> enumerate_codewords(const BinaryMatrix& g, std::uint64_t limit) {
    const std::size_t k = g.rows();
    if (k < 64 && limit > (std::uint64_t{1} << k) - 1)
        throw LimitTooLarge("limit exceeds 2^k - 1 for k = " + std::to_string(k));
    std::vector<Codeword> out;
    if (limit == 0) return out;
    out.reserve(limit);
    visit_codewords(g, 1, limit, [&](std::uint64_t, std::span<const std::uint64_t> words) {
        out.emplace_back(words, g.cols());
    });
    return out;
}

}  // namespace codesense
