#ifndef ELASTICA_VERSION_HPP
#define ELASTICA_VERSION_HPP

namespace elastica {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace elastica

#endif
