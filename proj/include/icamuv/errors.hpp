#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace icamuv {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Input violates a documented invariant (bad ids, duplicate views, ...).
class InvalidInput : public Error {
public:
    using Error::Error;
};

/// A graph that must be acyclic is not. `cycle()` lists the nodes of one
/// directed cycle in traversal order.
class CyclicGraph : public Error {
public:
    CyclicGraph(const std::string& what, std::vector<std::size_t> cycle)
        : Error(what), cycle_(std::move(cycle)) {}
    const std::vector<std::size_t>& cycle() const noexcept { return cycle_; }

private:
    std::vector<std::size_t> cycle_;
};

/// The union of identified edges over all datasets is cyclic.
class CyclicOverlap : public CyclicGraph {
public:
    using CyclicGraph::CyclicGraph;
};

class UnknownPair : public Error {
public:
    using Error::Error;
};

class CapExceeded : public Error {
public:
    using Error::Error;
};

class ConstraintsUnsatisfiable : public Error {
public:
    using Error::Error;
};

class NoEligibleTarget : public Error {
public:
    using Error::Error;
};

class ContradictoryConstraints : public Error {
public:
    using Error::Error;
};

class EmptySolutionSet : public Error {
public:
    using Error::Error;
};

class DimensionMismatch : public Error {
public:
    using Error::Error;
};

} // namespace icamuv
