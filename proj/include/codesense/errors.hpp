#ifndef CODESENSE_ERRORS_HPP
#define CODESENSE_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace codesense {

struct DegenerateCode : std::runtime_error {
    explicit DegenerateCode(const std::string& what) : std::runtime_error(what) {}
};

struct LimitTooLarge : std::invalid_argument {
    explicit LimitTooLarge(const std::string& what) : std::invalid_argument(what) {}
};

struct LengthMismatch : std::invalid_argument {
    explicit LengthMismatch(const std::string& what) : std::invalid_argument(what) {}
};

struct EpsilonOutOfRange : std::invalid_argument {
    explicit EpsilonOutOfRange(const std::string& what) : std::invalid_argument(what) {}
};

struct TooLarge : std::invalid_argument {
    explicit TooLarge(const std::string& what) : std::invalid_argument(what) {}
};

struct AssumptionViolated : std::invalid_argument {
    explicit AssumptionViolated(const std::string& what) : std::invalid_argument(what) {}
};

struct IndexOutOfRange : std::out_of_range {
    explicit IndexOutOfRange(const std::string& what) : std::out_of_range(what) {}
};

struct DomainError : std::domain_error {
    explicit DomainError(const std::string& what) : std::domain_error(what) {}
};

struct DimensionMismatch : std::invalid_argument {
    explicit DimensionMismatch(const std::string& what) : std::invalid_argument(what) {}
};

struct NoSparseSolution : std::runtime_error {
    explicit NoSparseSolution(const std::string& what) : std::runtime_error(what) {}
};

struct InsufficientData : std::runtime_error {
    explicit InsufficientData(const std::string& what) : std::runtime_error(what) {}
};

// Carries the byte offset of the first defect in the payload.
struct MalformedPayload : std::runtime_error {
    std::size_t position;
    MalformedPayload(const std::string& what, std::size_t pos)
        : std::runtime_error(what + " (at byte " + std::to_string(pos) + ")"), position(pos) {}
};

}  // namespace codesense

#endif
