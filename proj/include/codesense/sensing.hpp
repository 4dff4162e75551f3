#ifndef CODESENSE_SENSING_HPP
#define CODESENSE_SENSING_HPP

#include <cstdint>
#include <span>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "codesense/gf2.hpp"

namespace codesense {

/// Unit-norm column with entries in {+1/sqrt(p), -1/sqrt(p)}.
struct BipolarColumn {
    std::vector<double> entries;
};

/// beta_p: entry i is +1/sqrt(p) for bit 0 and -1/sqrt(p) for bit 1.
BipolarColumn bipolarize(const Codeword& x);

/// Inner product of two bipolar images from their Hamming distance: 1 - 2d/p.
double inner_product_via_distance(std::size_t d, std::size_t p);

/// p x m bipolar sensing matrix represented only by a generator: column j is
/// the bipolar image of the j-th nonzero codeword in canonical message order,
/// m = 2^(p-r) - 1. Immutable and shareable across threads.
class CompactSensingMatrix {
  public:
    /// Throws AssumptionViolated when 2^(p-r) < p or r >= p (the latter also
    /// rules out rank(H) = p). When rank(H) < r the columns come from the
    /// subcode of the first p - r canonical generator rows, keeping m fixed.
    static CompactSensingMatrix build(const BinaryMatrix& h);

    /// Wraps an already-canonical generator whose row count is p - r.
    static CompactSensingMatrix from_generator(const BinaryMatrix& g, std::size_t r);

    std::size_t p() const { return p_; }
    std::size_t r() const { return r_; }
    std::uint64_t m() const { return m_; }
    const BinaryMatrix& generator() const { return gen_; }
    double scale() const { return scale_; }  // 1/sqrt(p), computed once

    Codeword codeword(std::uint64_t j) const;    // j in [1, m]
    BipolarColumn column(std::uint64_t j) const;  // j in [1, m]

    /// Streaming product Phi * x without materializing columns; O(m p) time,
    /// O(p) extra space per worker. Chunk boundaries are fixed, so the
    /// ordered chunk reduction is bit-reproducible for any thread count.
    std::vector<double> matvec(std::span<const double> x) const;
    std::vector<double> matvec_serial(std::span<const double> x) const;

    /// Opt-in dense materialization for oracle tests: column-major p x m.
    std::vector<double> dense() const;

    /// Compact binary form: 16-byte header + packed generator rows,
    /// 16 + (p-r) * ceil(p/8) bytes total.
    std::vector<std::uint8_t> serialize() const;
    static CompactSensingMatrix deserialize(std::span<const std::uint8_t> bytes);

    /// codesense/v1 JSON interchange form.
    nlohmann::json to_json() const;
    static CompactSensingMatrix from_json(const nlohmann::json& j);

  private:
    CompactSensingMatrix(BinaryMatrix gen, std::size_t p, std::size_t r);

    BinaryMatrix gen_;
    std::size_t p_;
    std::size_t r_;
    std::uint64_t m_;
    double scale_;
};

}  // namespace codesense

#endif
