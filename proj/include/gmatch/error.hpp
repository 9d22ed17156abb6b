#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace gmatch {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class InvalidSymbol : public Error {
public:
    InvalidSymbol(std::size_t position, char symbol)
        : Error("invalid nucleotide '" + std::string(1, symbol) + "' at position " +
                std::to_string(position)),
          position_(position), symbol_(symbol) {}

    std::size_t position() const noexcept { return position_; }
    char symbol() const noexcept { return symbol_; }

private:
    std::size_t position_;
    char symbol_;
};

class InvalidCode : public Error {
public:
    explicit InvalidCode(std::size_t position)
        : Error("invalid nucleotide code at position " + std::to_string(position)),
          position_(position) {}

    std::size_t position() const noexcept { return position_; }

private:
    std::size_t position_;
};

class EmptySequence : public Error {
public:
    EmptySequence() : Error("sequence is empty") {}
};

class TextTooLong : public Error {
public:
    explicit TextTooLong(std::size_t n)
        : Error("text of length " + std::to_string(n) + " exceeds 32-bit position range") {}
};

class LengthMismatch : public Error {
public:
    LengthMismatch(std::size_t expected, std::size_t actual)
        : Error("length mismatch: expected " + std::to_string(expected) + ", got " +
                std::to_string(actual)) {}
};

class InvalidNode : public Error {
public:
    explicit InvalidNode(std::size_t node) : Error("invalid tree node " + std::to_string(node)) {}
};

class OutOfBounds : public Error {
public:
    OutOfBounds(std::size_t position, std::size_t n)
        : Error("suffix position " + std::to_string(position) + " out of bounds for text of length " +
                std::to_string(n)) {}
};

class EmptyPattern : public Error {
public:
    EmptyPattern() : Error("pattern is empty") {}
    explicit EmptyPattern(std::size_t query)
        : Error("query " + std::to_string(query) + " is empty"), query_(query) {}

    /// Index of the offending query inside a batch, or npos outside batch context.
    std::size_t query() const noexcept { return query_; }

    static constexpr std::size_t npos = static_cast<std::size_t>(-1);

private:
    std::size_t query_ = npos;
};

class EmptyQuerySet : public Error {
public:
    EmptyQuerySet() : Error("query set is empty") {}
};

class FileNotFound : public Error {
public:
    explicit FileNotFound(const std::string& path) : Error("cannot open file: " + path) {}
};

class MalformedFasta : public Error {
public:
    explicit MalformedFasta(const std::string& what) : Error("malformed FASTA: " + what) {}
};

class ReferenceTooShort : public Error {
public:
    ReferenceTooShort(std::size_t n, std::size_t m)
        : Error("reference of length " + std::to_string(n) + " is shorter than query length " +
                std::to_string(m)) {}
};

class BadMagic : public Error {
public:
    BadMagic() : Error("index file has bad magic bytes") {}
};

class Truncated : public Error {
public:
    explicit Truncated(const std::string& what) : Error("index file truncated: " + what) {}
};

class CorruptIndex : public Error {
public:
    explicit CorruptIndex(const std::string& what) : Error("corrupt index: " + what) {}
};

class WorkloadMismatch : public Error {
public:
    WorkloadMismatch() : Error("timing reports describe different workloads") {}
};

} // namespace gmatch
