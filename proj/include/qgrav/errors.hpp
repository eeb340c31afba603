#pragma once

#include <stdexcept>
#include <string>

namespace qgrav {

/// Base class for every error raised by the library.
class error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Argument outside the mathematical domain of an operation.
class domain_error : public error {
public:
    using error::error;
};

/// Malformed or invalid planets/observations table.
class ingestion_error : public error {
public:
    using error::error;
};

/// Separation at or below the space quantum.
class singularity_error : public error {
public:
    singularity_error(double separation, double quantum)
        : error("separation " + std::to_string(separation) + " m is at or below the space quantum " +
                std::to_string(quantum) + " m"),
          separation_(separation),
          quantum_(quantum) {}

    double separation() const noexcept { return separation_; }
    double quantum() const noexcept { return quantum_; }

private:
    double separation_;
    double quantum_;
};

/// q_l k^2 / h^2 >= 1: the perturbed orbit equation no longer oscillates.
class model_breakdown_error : public error {
public:
    using error::error;
};

/// Adaptive step size underflowed.
class step_failure_error : public error {
public:
    using error::error;
};

/// Trajectory does not contain enough perihelion passages.
class insufficient_span_error : public error {
public:
    using error::error;
};

}  // namespace qgrav
