#ifndef TAILIX_VERSION_HPP
#define TAILIX_VERSION_HPP

namespace tailix {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace tailix

#endif  // TAILIX_VERSION_HPP
