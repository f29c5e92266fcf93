#pragma once

// Recodings: bijections between the full products of two spaces. Whether a
// situation factorizes depends on how it is coded; recoding the same set of
// situations can turn a non-factorizable model set into a factorizable one.

#include "semsplit/core.hpp"
#include "semsplit/factorize.hpp"
#include "semsplit/logic.hpp"

#include <algorithm>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace semsplit
{

class Recoding
{
    SpacePtr _source;
    SpacePtr _target;
    std::vector< Code > _table; // source code -> target code, over the full products

public:
    Recoding( SpacePtr source, SpacePtr target, std::vector< Code > table )
            : _source{ std::move( source ) }, _target{ std::move( target ) }, _table{ std::move( table ) }
    {
        const auto n = detail::ScopeCodec{ *_source, _source->all() }.size();
        const auto m = detail::ScopeCodec{ *_target, _target->all() }.size();
        if ( n != m || _table.size() != n )
            throw Error{ ErrorKind::recoding, "recoding table does not match the product sizes" };
        std::vector< bool > hit( n, false );
        for ( auto c : _table )
        {
            if ( c >= n || hit[ c ] )
                throw Error{ ErrorKind::recoding, "recoding table is not a permutation" };
            hit[ c ] = true;
        }
    }

    static Recoding identity( const SpacePtr& space )
    {
        const auto n = detail::ScopeCodec{ *space, space->all() }.size();
        std::vector< Code > table( n );
        for ( Code c = 0; c < n; ++c )
            table[ c ] = c;
        return Recoding{ space, space, std::move( table ) };
    }

    [[nodiscard]] const SpacePtr& source() const noexcept { return _source; }
    [[nodiscard]] const SpacePtr& target() const noexcept { return _target; }
    [[nodiscard]] std::span< const Code > table() const noexcept { return _table; }
    [[nodiscard]] Code operator()( Code c ) const { return _table.at( c ); }

    [[nodiscard]] Recoding inverse() const
    {
        std::vector< Code > back( _table.size() );
        for ( Code c = 0; c < _table.size(); ++c )
            back[ _table[ c ] ] = c;
        return Recoding{ _target, _source, std::move( back ) };
    }

    friend bool operator==( const Recoding& a, const Recoding& b )
    {
        return a._table == b._table && same_space( a._source, b._source ) && same_space( a._target, b._target );
    }
};

struct RecodingDefinition
{
    std::string name;
    Formula formula;
};

namespace detail
{

inline std::string compact_row( const Assignment& a )
{
    std::string out;
    for ( auto k : a.scope() )
        out += a.symbol( k );
    return out;
}

} // namespace detail

// Each new variable is defined by a formula over the (Boolean) source
// variables; the induced map on full assignments must be a bijection.
inline Recoding recoding_from_definitions( const SpacePtr& source, std::span< const RecodingDefinition > defs )
{
    for ( std::size_t k = 0; k < source->size(); ++k )
        if ( !source->is_boolean( k ) )
            throw Error{ ErrorKind::argument, "'" + ( *source )[ k ].name + "' does not have the domain {0, 1}" };
    if ( defs.size() != source->size() )
        throw Error{ ErrorKind::recoding, "expected " + std::to_string( source->size() ) + " definitions, got " +
                                              std::to_string( defs.size() ) };

    std::vector< std::string > names;
    for ( const auto& d : defs )
        names.push_back( d.name );
    auto target = ProductSpace::boolean( names );

    // Source variables with domain order {0, 1} or {1, 0}; evaluate by symbol.
    detail::ScopeCodec codec{ *source, source->all() };
    auto slot_of = [ & ]( const std::string& name ) -> std::size_t { return source->index( name ); };
    std::vector< detail::CompiledFormula > compiled;
    for ( const auto& d : defs )
        compiled.emplace_back( d.formula, slot_of );

    std::vector< ValueIndex > one_of( source->size() );
    for ( std::size_t k = 0; k < source->size(); ++k )
        one_of[ k ] = source->value( k, "1" );

    detail::ScopeCodec target_codec{ *target, target->all() };
    std::vector< Code > table( codec.size() );
    std::vector< std::optional< Code > > preimage( codec.size() );
    for ( Code c = 0; c < codec.size(); ++c )
    {
        std::uint64_t bits = 0;
        for ( std::size_t k = 0; k < source->size(); ++k )
            if ( codec.digit( c, k ) == one_of[ k ] )
                bits |= std::uint64_t{ 1 } << k;
        std::vector< ValueIndex > image;
        for ( const auto& f : compiled )
            image.push_back( f( bits ) ? 1 : 0 );
        auto t = target_codec.encode( image );
        if ( preimage[ t ] )
        {
            auto later = Assignment::from_code( source, source->all(), c );
            auto earlier = Assignment::from_code( source, source->all(), *preimage[ t ] );
            throw Error{ ErrorKind::recoding, "definitions are not injective: collision (" + detail::compact_row( later ) +
                                                  "," + detail::compact_row( earlier ) + ")" };
        }
        preimage[ t ] = c;
        table[ c ] = t;
    }
    return Recoding{ source, std::move( target ), std::move( table ) };
}

inline ModelSet apply_recoding( const ModelSet& x, const Recoding& h )
{
    if ( !same_space( x.space(), h.source() ) || x.scope() != x.space()->all() )
        throw Error{ ErrorKind::scope, "recodings apply to model sets over the full source space" };
    std::vector< Code > image;
    image.reserve( x.size() );
    for ( auto c : x.codes() )
        image.push_back( h( c ) );
    return ModelSet{ h.target(), h.target()->all(), std::move( image ) };
}

// A bijection of the full product sending `from` onto `to` (equal sizes),
// members matched in canonical order and the rest likewise.
inline Recoding recoding_onto( const ModelSet& from, const ModelSet& to )
{
    if ( !same_space( from.space(), to.space() ) || from.scope() != from.space()->all() || to.scope() != from.scope() )
        throw Error{ ErrorKind::scope, "recoding_onto needs two full-scope model sets over one space" };
    if ( from.size() != to.size() )
        throw Error{ ErrorKind::recoding, "sets of different cardinality are not images of each other" };
    const auto n = from.product_size();
    std::vector< Code > table( n );
    for ( std::size_t i = 0; i < from.size(); ++i )
        table[ from.codes()[ i ] ] = to.codes()[ i ];
    Code next = 0;
    for ( Code c = 0; c < n; ++c )
    {
        if ( from.contains( c ) )
            continue;
        while ( to.contains( next ) )
            ++next;
        table[ c ] = next++;
    }
    return Recoding{ from.space(), from.space(), std::move( table ) };
}

inline constexpr Code default_max_product = 4096;

// Searches for a set of the same cardinality as x with a factorization of at
// least two blocks. Any equinumerous set is the image of x under some
// bijection, so this decides whether x can be recoded into a factorizable
// form. Returns the first such set in canonical order (lexicographic on the
// sorted member codes), or nothing.
//
// A factorizable set is P x Q for some bipartition {A, A'}. For fixed sizes
// |P| = a and |Q| = b, taking the a smallest codes over A and the b smallest
// over A' yields the lexicographically least product, since the full code is
// monotone in each side's code.
inline std::optional< ModelSet > exists_factorable_recoding( const ModelSet& x, Code max_product = default_max_product )
{
    const auto& space = x.space();
    if ( x.scope() != space->all() )
        throw Error{ ErrorKind::scope, "recoding search needs a model set over the full space" };
    if ( x.product_size() > max_product )
        throw Error{ ErrorKind::resource, "full product has " + std::to_string( x.product_size() ) +
                                              " points, above the bound " + std::to_string( max_product ) };
    const auto scope = x.scope();
    if ( scope.size() < 2 )
        return std::nullopt;
    if ( x.empty() )
        return x;

    const auto coords = scope.indices();
    const auto anchor = CoordSet::of( { coords.front() } );
    const auto m = static_cast< Code >( x.size() );
    std::optional< std::vector< Code > > best;

    for ( std::uint64_t mask = 0; mask + 1 < ( std::uint64_t{ 1 } << ( coords.size() - 1 ) ); ++mask )
    {
        auto side = anchor;
        for ( std::size_t j = 0; j + 1 < coords.size(); ++j )
            if ( ( mask >> j ) & 1U )
                side = side.with( coords[ j + 1 ] );
        auto other = scope - side;
        detail::ScopeCodec left{ *space, side };
        detail::ScopeCodec right{ *space, other };
        detail::ScopeCodec full{ *space, scope };
        detail::Recoder from_left{ left, full };
        detail::Recoder from_right{ right, full };

        for ( Code a = 1; a <= m; ++a )
        {
            if ( m % a != 0 )
                continue;
            auto b = m / a;
            if ( a > left.size() || b > right.size() )
                continue;
            std::vector< Code > candidate;
            candidate.reserve( m );
            for ( Code p = 0; p < a; ++p )
                for ( Code q = 0; q < b; ++q )
                    candidate.push_back( from_left( p ) + from_right( q ) );
            std::sort( candidate.begin(), candidate.end() );
            if ( !best || candidate < *best )
                best = std::move( candidate );
        }
    }
    if ( !best )
        return std::nullopt;
    return ModelSet{ space, scope, std::move( *best ) };
}

// Lines "name := formula"; '#' starts a comment.
inline std::vector< RecodingDefinition > parse_recoding_definitions( std::string_view text )
{
    std::vector< RecodingDefinition > defs;
    std::size_t line_no = 0;
    while ( !text.empty() )
    {
        auto nl = text.find( '\n' );
        auto line = text.substr( 0, nl );
        text = nl == std::string_view::npos ? std::string_view{} : text.substr( nl + 1 );
        ++line_no;

        if ( auto hash = line.find( '#' ); hash != std::string_view::npos )
            line = line.substr( 0, hash );
        auto first = line.find_first_not_of( " \t\r" );
        if ( first == std::string_view::npos )
            continue;

        auto i = first;
        if ( !detail::identifier_start( line[ i ] ) )
            throw ParseError{ "expected a variable name", i, line_no };
        while ( i < line.size() && detail::identifier_char( line[ i ] ) )
            ++i;
        std::string name{ line.substr( first, i - first ) };
        auto op = line.find_first_not_of( " \t", i );
        if ( op == std::string_view::npos || line.substr( op, 2 ) != ":=" )
            throw ParseError{ "expected ':=' after '" + name + "'", op == std::string_view::npos ? line.size() : op, line_no };
        for ( const auto& d : defs )
            if ( d.name == name )
                throw ParseError{ "variable '" + name + "' defined twice", first, line_no };

        auto body_start = op + 2;
        try
        {
            defs.push_back( { std::move( name ), parse_formula( line.substr( body_start ) ) } );
        }
        catch ( const ParseError& e )
        {
            throw ParseError{ e.detail(), body_start + e.offset(), line_no };
        }
    }
    return defs;
}

} // namespace semsplit
