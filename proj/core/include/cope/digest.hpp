#ifndef COPE_DIGEST_HPP
#define COPE_DIGEST_HPP

#include <cstdint>
#include <string>
#include <string_view>

#include "cope/matrix.hpp"

namespace cope {

inline std::uint64_t fnv1a64(std::string_view data, std::uint64_t seed = 1469598103934665603ull) {
    std::uint64_t h = seed;
    for (unsigned char c : data) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

template <class S>
std::uint64_t matrix_digest(const Matrix<S>& m) {
    std::string buf = std::to_string(m.rows()) + "x" + std::to_string(m.cols()) + ";";
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) {
            buf += m(i, j).str();
            buf += ',';
        }
    return fnv1a64(buf);
}

inline std::string digest_hex(std::uint64_t h) {
    static const char* hexd = "0123456789abcdef";
    std::string out(16, '0');
    for (int i = 15; i >= 0; --i) {
        out[i] = hexd[h & 0xf];
        h >>= 4;
    }
    return out;
}

} // namespace cope

#endif
