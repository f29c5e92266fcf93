#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace semsplit
{

enum class ErrorKind
{
    scope,          // coordinate outside the scope, or scopes that must match do not
    no_completion,  // assignment has no extension inside the model set
    empty_set,      // operation needs a witness but the model set is empty
    argument,       // malformed argument (empty family, overlapping coordinate sets, ...)
    partition,      // blocks overlap or fail to cover
    parse,          // text input could not be parsed
    recoding,       // definition set does not induce a bijection
    revision,       // revision undefined (empty prior or empty input)
    resource,       // configured size bound exceeded
};

constexpr std::string_view to_string( ErrorKind kind ) noexcept
{
    switch ( kind )
    {
    case ErrorKind::scope: return "scope error";
    case ErrorKind::no_completion: return "no-completion error";
    case ErrorKind::empty_set: return "empty-set error";
    case ErrorKind::argument: return "argument error";
    case ErrorKind::partition: return "partition error";
    case ErrorKind::parse: return "parse error";
    case ErrorKind::recoding: return "recoding error";
    case ErrorKind::revision: return "revision error";
    case ErrorKind::resource: return "resource error";
    }
    return "error";
}

class Error : public std::runtime_error
{
    ErrorKind _kind;

public:
    Error( ErrorKind kind, const std::string& message )
            : std::runtime_error{ std::string{ to_string( kind ) } + ": " + message }, _kind{ kind }
    {
    }

    [[nodiscard]] ErrorKind kind() const noexcept { return _kind; }

    // Resource errors are the only ones that are not the caller's fault.
    [[nodiscard]] bool is_resource() const noexcept { return _kind == ErrorKind::resource; }
};

// Parse failures carry the byte offset into the parsed string. Readers of
// multi-line files additionally fill in the 1-based line number.
class ParseError : public Error
{
    std::size_t _offset;
    std::size_t _line;
    std::string _detail;

public:
    ParseError( std::string detail, std::size_t offset, std::size_t line = 0 )
            : Error{ ErrorKind::parse, describe( detail, offset, line ) }, _offset{ offset }, _line{ line },
              _detail{ std::move( detail ) }
    {
    }

    [[nodiscard]] std::size_t offset() const noexcept { return _offset; }
    [[nodiscard]] std::size_t line() const noexcept { return _line; }
    [[nodiscard]] const std::string& detail() const noexcept { return _detail; }

    [[nodiscard]] ParseError at_line( std::size_t line ) const { return ParseError{ _detail, _offset, line }; }

private:
    static std::string describe( const std::string& detail, std::size_t offset, std::size_t line )
    {
        if ( line > 0 )
            return "line " + std::to_string( line ) + ", column " + std::to_string( offset + 1 ) + ": " + detail;
        return "offset " + std::to_string( offset ) + ": " + detail;
    }
};

} // namespace semsplit
