#ifndef CODESENSE_VERSION_HPP
#define CODESENSE_VERSION_HPP

namespace codesense {

inline constexpr const char* kVersion = "codesense 1.0.0";

}

#endif
