#ifndef SECTORFLOW_ERRORS_HPP
#define SECTORFLOW_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace sectorflow {

// Base class for all library errors. CLI maps ParseError/ValidationError to
// exit 1 and everything else derived from Error to exit 2.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Malformed input text (syntax level).
struct ParseError : Error {
    using Error::Error;
};

// Semantically invalid input; `path` points at the offending field,
// e.g. "aircraft[3].route[1]".
struct ValidationError : Error {
    std::string path;
    ValidationError(std::string field_path, const std::string& what)
        : Error(field_path.empty() ? what : field_path + ": " + what),
          path(std::move(field_path)) {}
};

struct UnknownSector : Error {
    explicit UnknownSector(int sector)
        : Error("unknown sector " + std::to_string(sector)) {}
};

struct UnknownRoute : Error {
    UnknownRoute(int from, int to)
        : Error("unknown route " + std::to_string(from) + "->" + std::to_string(to)) {}
};

struct UnknownAircraft : Error {
    explicit UnknownAircraft(int id, const std::string& why = "")
        : Error("unknown aircraft " + std::to_string(id) + (why.empty() ? "" : " (" + why + ")")) {}
};

struct DisconnectedGraph : Error {
    DisconnectedGraph() : Error("graph is disconnected") {}
    explicit DisconnectedGraph(const std::string& what) : Error(what) {}
};

// A keep-one-edge variant came out disconnected; names the kept edge, or the
// target itself when it is isolated and no variant exists at all.
struct DisconnectedVariant : Error {
    int kept_from, kept_to;
    DisconnectedVariant(int from, int to)
        : Error("keep-one-edge variant keeping route " + std::to_string(from) + "->" +
                std::to_string(to) + " is disconnected"),
          kept_from(from), kept_to(to) {}
    explicit DisconnectedVariant(int isolated_target)
        : Error("sector " + std::to_string(isolated_target) +
                " is isolated; every keep-one-edge variant is disconnected"),
          kept_from(isolated_target), kept_to(isolated_target) {}
};

struct NotSymmetric : Error {
    NotSymmetric() : Error("matrix is not symmetric") {}
};

struct NoPositiveEigenvalue : Error {
    NoPositiveEigenvalue() : Error("no positive eigenvalue (edgeless or trivial graph)") {}
};

struct RouteExhausted : Error {
    explicit RouteExhausted(int aircraft)
        : Error("aircraft " + std::to_string(aircraft) + " is at its final sector") {}
};

struct ConflictingAttack : Error {
    explicit ConflictingAttack(const std::string& what) : Error(what) {}
};

// A path-score term has a nonzero numerator over a zero baseline count.
// Unreachable when the census comes from path_census; kept as a guard.
struct DivisionByZeroLength : Error {
    explicit DivisionByZeroLength(int n)
        : Error("no baseline paths of length " + std::to_string(n) +
                " but a nonzero loss count for that length") {}
};

// Internal engine assertion (duplicate queue membership and the like).
struct InconsistentState : Error {
    using Error::Error;
};

}  // namespace sectorflow

#endif
