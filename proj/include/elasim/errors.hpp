#ifndef ELASIM_ERRORS_HPP
#define ELASIM_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace elasim {

// Base class for every error raised by the library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A caller violated a documented precondition (empty window, non-positive
// core count, out-of-domain efficiency, ...).
struct InvalidInputError : Error {
    using Error::Error;
};

// A measurement window with zero useful work everywhere. This signals a
// broken measurement, not a valid metric, so it is rejected outright.
struct DegenerateWindowError : Error {
    using Error::Error;
};

// Windows with different process counts (or non-adjacent spans) cannot be
// accumulated: a core-count change invalidates the running window.
struct InvalidMergeError : Error {
    using Error::Error;
};

// The core estimate is undefined: the factor (1 - 1/CE) vanishes at CE = 1.
struct SingularityError : Error {
    using Error::Error;
};

// The inverse prediction left the model's domain.
struct OutOfModelError : Error {
    using Error::Error;
};

// Controller/scheduler event arrived in a state that cannot accept it.
struct ProtocolError : Error {
    using Error::Error;
};

// A resize request exceeds what the cluster can ever provide.
struct CapacityError : Error {
    using Error::Error;
};

// Trace records must be appended with nondecreasing step indices.
struct SequencingError : Error {
    using Error::Error;
};

// Scenario-file problem; `field` is the dotted path of the offending key.
struct ConfigError : Error {
    ConfigError(std::string field_path, const std::string& what)
        : Error(field_path + ": " + what), field(std::move(field_path)) {}
    std::string field;
};

} // namespace elasim

#endif
