#include "codesense/sensing.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>

#include <nlohmann/json.hpp>

namespace codesense {

namespace {

constexpr char kMagic[8] = {'C', 'S', 'E', 'N', 'S', 'E', '0', '1'};

void check_assumptions(std::size_t p, std::size_t r) {
    if (r < 1 || r >= p)
        throw AssumptionViolated("need p > r >= 1, got p = " + std::to_string(p) +
                                 ", r = " + std::to_string(r));
    std::size_t k = p - r;
    if (k >= 63) throw TooLarge("p - r >= 63: m does not fit a 64-bit count");
    if ((std::uint64_t{1} << k) < p)
        throw AssumptionViolated("2^(p-r) >= p violated: 2^" + std::to_string(k) + " < " +
                                 std::to_string(p));
}

void put_u32(std::vector<std::uint8_t>& out, std::uint32_t v) {
    for (int i = 0; i < 4; ++i) out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

std::uint32_t get_u32(std::span<const std::uint8_t> bytes, std::size_t pos) {
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(bytes[pos + i]) << (8 * i);
    return v;
}

}  // namespace

BipolarColumn bipolarize(const Codeword& x) {
    const std::size_t p = x.length();
    const double s = 1.0 / std::sqrt(static_cast<double>(p));
    BipolarColumn col;
    col.entries.resize(p);
    for (std::size_t i = 0; i < p; ++i) col.entries[i] = x.get(i) ? -s : s;
    return col;
}

double inner_product_via_distance(std::size_t d, std::size_t p) {
    if (d > p) throw DomainError("distance exceeds length");
    return 1.0 - 2.0 * static_cast<double>(d) / static_cast<double>(p);
}

CompactSensingMatrix::CompactSensingMatrix(BinaryMatrix gen, std::size_t p, std::size_t r)
    : gen_(std::move(gen)),
      p_(p),
      r_(r),
      m_((std::uint64_t{1} << (p - r)) - 1),
      scale_(1.0 / std::sqrt(static_cast<double>(p))) {}

CompactSensingMatrix CompactSensingMatrix::build(const BinaryMatrix& h) {
    const std::size_t p = h.cols();
    const std::size_t r = h.rows();
    check_assumptions(p, r);
    BinaryMatrix full = generator_from_parity_check(h);  // k = p - rank(H) >= p - r rows
    const std::size_t k = p - r;
    if (full.rows() == k) return CompactSensingMatrix(std::move(full), p, r);
    BinaryMatrix sub(k, p);
    for (std::size_t i = 0; i < k; ++i)
        std::copy(full.row_ptr(i), full.row_ptr(i) + full.words_per_row(), sub.row_mut(i));
    return CompactSensingMatrix(std::move(sub), p, r);
}

CompactSensingMatrix CompactSensingMatrix::from_generator(const BinaryMatrix& g, std::size_t r) {
    const std::size_t p = g.cols();
    check_assumptions(p, r);
    if (g.rows() != p - r)
        throw DimensionMismatch("generator must have p - r rows");
    return CompactSensingMatrix(g, p, r);
}

Codeword CompactSensingMatrix::codeword(std::uint64_t j) const {
    if (j < 1 || j > m_) throw IndexOutOfRange("column index " + std::to_string(j) +
                                               " outside [1, " + std::to_string(m_) + "]");
    return encode(gen_, j);
}

BipolarColumn CompactSensingMatrix::column(std::uint64_t j) const { return bipolarize(codeword(j)); }

std::vector<double> CompactSensingMatrix::matvec_serial(std::span<const double> x) const {
    if (x.size() != m_) throw LengthMismatch("matvec expects a length-m vector");
    std::vector<double> acc(p_, 0.0);
    visit_codewords(gen_, 1, m_, [&](std::uint64_t u, std::span<const std::uint64_t> words) {
        const double coef = x[u - 1] * scale_;
        if (coef == 0.0) return;
        for (std::size_t i = 0; i < p_; ++i) {
            bool bit = (words[i >> 6] >> (i & 63)) & 1u;
            acc[i] += bit ? -coef : coef;
        }
    });
    return acc;
}

std::vector<double> CompactSensingMatrix::matvec(std::span<const double> x) const {
    if (x.size() != m_) throw LengthMismatch("matvec expects a length-m vector");
    const std::uint64_t chunk = std::uint64_t{1} << 12;
    if (m_ <= chunk) return matvec_serial(x);
    const std::uint64_t nchunks = (m_ + chunk - 1) / chunk;
    std::vector<std::vector<double>> partial(nchunks);
#pragma omp parallel for schedule(static)
    for (std::int64_t c = 0; c < static_cast<std::int64_t>(nchunks); ++c) {
        std::uint64_t first = static_cast<std::uint64_t>(c) * chunk + 1;
        std::uint64_t last = std::min(first + chunk - 1, m_);
        std::vector<double> acc(p_, 0.0);
        visit_codewords(gen_, first, last, [&](std::uint64_t u, std::span<const std::uint64_t> words) {
            const double coef = x[u - 1] * scale_;
            if (coef == 0.0) return;
            for (std::size_t i = 0; i < p_; ++i) {
                bool bit = (words[i >> 6] >> (i & 63)) & 1u;
                acc[i] += bit ? -coef : coef;
            }
        });
        partial[static_cast<std::size_t>(c)] = std::move(acc);
    }
    // fixed-order reduction over chunks
    std::vector<double> acc(p_, 0.0);
    for (const auto& part : partial)
        for (std::size_t i = 0; i < p_; ++i) acc[i] += part[i];
    return acc;
}

std::vector<double> CompactSensingMatrix::dense() const {
    if (m_ > (std::uint64_t{1} << 20)) throw TooLarge("dense materialization beyond 2^20 columns");
    std::vector<double> out(p_ * m_);
    visit_codewords(gen_, 1, m_, [&](std::uint64_t u, std::span<const std::uint64_t> words) {
        double* col = out.data() + (u - 1) * p_;
        for (std::size_t i = 0; i < p_; ++i) {
            bool bit = (words[i >> 6] >> (i & 63)) & 1u;
            col[i] = bit ? -scale_ : scale_;
        }
    });
    return out;
}

std::vector<std::uint8_t> CompactSensingMatrix::serialize() const {
    std::vector<std::uint8_t> out;
    const std::size_t k = p_ - r_;
    out.reserve(16 + k * ((p_ + 7) / 8));
    out.insert(out.end(), kMagic, kMagic + 8);
    put_u32(out, static_cast<std::uint32_t>(p_));
    put_u32(out, static_cast<std::uint32_t>(r_));
    for (std::size_t i = 0; i < k; ++i) {
        auto bytes = gen_.row_bytes(i);
        out.insert(out.end(), bytes.begin(), bytes.end());
    }
    return out;
}

CompactSensingMatrix CompactSensingMatrix::deserialize(std::span<const std::uint8_t> bytes) {
    if (bytes.size() < 16)
        throw MalformedPayload("truncated header", bytes.size());
    if (std::memcmp(bytes.data(), kMagic, 8) != 0)
        throw MalformedPayload("bad magic", 0);
    std::size_t p = get_u32(bytes, 8);
    std::size_t r = get_u32(bytes, 12);
    if (p == 0 || r == 0 || r >= p) throw MalformedPayload("invalid dimensions in header", 8);
    check_assumptions(p, r);
    const std::size_t k = p - r;
    const std::size_t row_bytes = (p + 7) / 8;
    const std::size_t expected = 16 + k * row_bytes;
    if (bytes.size() < expected)
        throw MalformedPayload("truncated generator payload", bytes.size());
    if (bytes.size() > expected)
        throw MalformedPayload("trailing bytes after generator payload", expected);
    BinaryMatrix g(k, p);
    for (std::size_t i = 0; i < k; ++i)
        g.set_row_from_bytes(i, bytes.subspan(16 + i * row_bytes, row_bytes));
    return CompactSensingMatrix(std::move(g), p, r);
}

nlohmann::json CompactSensingMatrix::to_json() const {
    nlohmann::json j;
    j["format"] = "codesense/v1";
    j["p"] = p_;
    j["r"] = r_;
    j["m"] = m_;
    j["generator"] = gen_.to_json();
    return j;
}

CompactSensingMatrix CompactSensingMatrix::from_json(const nlohmann::json& j) {
    if (!j.is_object() || j.value("format", "") != "codesense/v1")
        throw MalformedPayload("expected codesense/v1 object", 0);
    std::size_t p = j.at("p").get<std::size_t>();
    std::size_t r = j.at("r").get<std::size_t>();
    BinaryMatrix g = BinaryMatrix::from_json(j.at("generator"));
    if (g.cols() != p) throw MalformedPayload("generator column count disagrees with p", 0);
    auto sm = from_generator(g, r);
    if (j.contains("m") && j.at("m").get<std::uint64_t>() != sm.m())
        throw MalformedPayload("stored m disagrees with 2^(p-r) - 1", 0);
    return sm;
}

}  // namespace codesense
