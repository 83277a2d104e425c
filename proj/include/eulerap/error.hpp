#pragma once

#include <stdexcept>
#include <string>

namespace eulerap {

enum class errc {
    invalid_argument,
    out_of_domain,
    precision_unreachable,
    invalid_spec,
    internal_error,
};

inline const char* to_string(errc code) {
    switch (code) {
    case errc::invalid_argument: return "invalid-argument";
    case errc::out_of_domain: return "out-of-domain";
    case errc::precision_unreachable: return "precision-unreachable";
    case errc::invalid_spec: return "invalid-spec";
    case errc::internal_error: return "internal-error";
    }
    return "unknown";
}

/// Every failure raised by the library carries one of the codes above.
class error : public std::runtime_error {
public:
    error(errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
    errc code() const noexcept { return code_; }

private:
    errc code_;
};

namespace detail {
inline void require(bool ok, errc code, const std::string& msg) {
    if (!ok) throw error(code, msg);
}
}  // namespace detail

}  // namespace eulerap
