#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace cylwave {

inline constexpr const char* kVersion = "0.1.0";

/// Execution policy for the data-parallel kernels. Every kernel has a plain
/// serial loop kept as the reference; the OpenMP variant partitions work so
/// that each output element is accumulated in the same order as the serial
/// code (results are bitwise identical for element-parallel kernels).
enum class Exec { serial, openmp };

inline Exec default_exec() { return Exec::openmp; }

struct InvalidParameter : std::invalid_argument {
    explicit InvalidParameter(const std::string& what) : std::invalid_argument(what) {}
};

struct SolverError : std::runtime_error {
    explicit SolverError(const std::string& what) : std::runtime_error(what) {}
};

struct DivergenceError : std::runtime_error {
    explicit DivergenceError(const std::string& what) : std::runtime_error(what) {}
};

inline void require(bool cond, const std::string& msg) {
    if (!cond) throw InvalidParameter(msg);
}

} // namespace cylwave
