// SPDX-License-Identifier: MIT
#pragma once

#include <stdexcept>
#include <string>

namespace ivsolve {

/// Quote price lies outside the open no-arbitrage band (0, F*).
class ArbitrageViolation : public std::domain_error {
public:
    explicit ArbitrageViolation(const std::string& what) : std::domain_error(what) {}
};

/// Non-finite or structurally invalid input fields.
class InvalidInput : public std::invalid_argument {
public:
    explicit InvalidInput(const std::string& what) : std::invalid_argument(what) {}
};

/// A persisted reference table is absent and regeneration was not requested.
class MissingReferenceTable : public std::runtime_error {
public:
    explicit MissingReferenceTable(const std::string& what) : std::runtime_error(what) {}
};

/// The multiprecision inverter failed to converge (defensive; should not
/// occur on admissible inputs).
class NoConvergence : public std::runtime_error {
public:
    explicit NoConvergence(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace ivsolve
