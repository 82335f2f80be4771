// Error hierarchy. Three kinds map onto the CLI exit codes:
// config -> 2, data -> 3, numerical -> 4.
#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace tsecon {

enum class error_kind { config, data, numerical };

class error : public std::runtime_error {
public:
    error(error_kind kind, std::string code, const std::string& what)
        : std::runtime_error(code + ": " + what), kind_(kind), code_(std::move(code)) {}

    error_kind kind() const noexcept { return kind_; }
    const std::string& code() const noexcept { return code_; }

private:
    error_kind kind_;
    std::string code_;
};

struct config_error : error {
    config_error(std::string code, const std::string& what)
        : error(error_kind::config, std::move(code), what) {}
};

struct data_error : error {
    data_error(std::string code, const std::string& what)
        : error(error_kind::data, std::move(code), what) {}
};

struct numerical_error : error {
    numerical_error(std::string code, const std::string& what)
        : error(error_kind::numerical, std::move(code), what) {}
};

inline int exit_code_for(error_kind kind) {
    switch (kind) {
    case error_kind::config: return 2;
    case error_kind::data: return 3;
    case error_kind::numerical: return 4;
    }
    return 1;
}

} // namespace tsecon
