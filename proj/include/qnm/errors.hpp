#pragma once
#include <stdexcept>
#include <string>

namespace qnm {

// Rejections carry the CLI exit-code class they map to.
class Rejection : public std::runtime_error {
public:
    enum class Kind { config = 2, numeric = 3, io = 4 };
    Rejection(Kind k, const std::string& msg) : std::runtime_error(msg), kind(k) {}
    Kind kind;
};

inline Rejection config_error(const std::string& msg) { return Rejection(Rejection::Kind::config, msg); }
inline Rejection numeric_rejection(const std::string& msg) { return Rejection(Rejection::Kind::numeric, msg); }
inline Rejection io_error(const std::string& msg) { return Rejection(Rejection::Kind::io, msg); }

}  // namespace qnm
