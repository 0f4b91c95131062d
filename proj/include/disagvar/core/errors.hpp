#pragma once

#include <stdexcept>
#include <string>

namespace disagvar {

// Exit code 2: malformed or inconsistent configuration.
class config_error : public std::runtime_error {
public:
    explicit config_error(const std::string& msg) : std::runtime_error(msg) {}
};

// Exit code 3: input data that fails validation (bad shares, date gaps,
// insufficient observations, unreadable files, ...).
class data_error : public std::runtime_error {
public:
    explicit data_error(const std::string& msg) : std::runtime_error(msg) {}
};

// Exit code 4: numerical failure during computation (sampler divergence,
// non-finite intermediate values, domain violations of model parameters).
class numeric_error : public std::runtime_error {
public:
    explicit numeric_error(const std::string& msg) : std::runtime_error(msg) {}
};

} // namespace disagvar
