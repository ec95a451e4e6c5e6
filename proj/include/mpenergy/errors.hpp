#pragma once

#include <stdexcept>
#include <string>

namespace mpenergy {

/// Regression or search could not produce coefficients from the given samples.
class fit_error : public std::runtime_error {
public:
    explicit fit_error(const std::string& what) : std::runtime_error(what) {}
};

/// Malformed config or input file. Messages carry the offending line/row.
class parse_error : public std::runtime_error {
public:
    explicit parse_error(const std::string& what) : std::runtime_error(what) {}
};

/// A simulation run could not complete within its duration limit.
class sim_timeout_error : public std::runtime_error {
public:
    explicit sim_timeout_error(const std::string& what) : std::runtime_error(what) {}
};

} // namespace mpenergy
