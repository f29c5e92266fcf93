#pragma once

#include "semsplit/core.hpp"

#include <algorithm>
#include <cctype>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace semsplit
{

// A partition of a coordinate set into disjoint nonempty blocks, kept in
// canonical order (blocks sorted by their least coordinate) so that equality
// is structural.
class Partition
{
    CoordSet _scope;
    std::vector< CoordSet > _blocks;

public:
    Partition() = default;

    explicit Partition( std::vector< CoordSet > blocks ) : _blocks{ std::move( blocks ) }
    {
        for ( auto b : _blocks )
        {
            if ( b.empty() )
                throw Error{ ErrorKind::partition, "partition blocks must be nonempty" };
            if ( !b.disjoint( _scope ) )
                throw Error{ ErrorKind::partition, "partition blocks overlap" };
            _scope = _scope | b;
        }
        std::sort( _blocks.begin(), _blocks.end(), []( CoordSet a, CoordSet b ) { return a.least() < b.least(); } );
    }

    // Blocks must cover exactly `scope`.
    Partition( CoordSet scope, std::vector< CoordSet > blocks ) : Partition{ std::move( blocks ) }
    {
        if ( _scope != scope )
            throw Error{ ErrorKind::partition, "partition blocks do not cover the scope" };
    }

    // The one-block partition.
    static Partition top( CoordSet scope )
    {
        if ( scope.empty() )
            return Partition{};
        return Partition{ { scope } };
    }

    static Partition singletons( CoordSet scope )
    {
        std::vector< CoordSet > blocks;
        for ( auto k : scope )
            blocks.push_back( CoordSet::of( { k } ) );
        return Partition{ std::move( blocks ) };
    }

    [[nodiscard]] CoordSet scope() const noexcept { return _scope; }
    [[nodiscard]] std::span< const CoordSet > blocks() const noexcept { return _blocks; }
    [[nodiscard]] std::size_t size() const noexcept { return _blocks.size(); }

    // The block containing coordinate k.
    [[nodiscard]] CoordSet block_of( std::size_t k ) const
    {
        for ( auto b : _blocks )
            if ( b.contains( k ) )
                return b;
        throw Error{ ErrorKind::scope, "coordinate outside the partition's scope" };
    }

    friend bool operator==( const Partition&, const Partition& ) = default;
};

inline Partition restrict_partition( const Partition& p, CoordSet target )
{
    if ( !target.subset_of( p.scope() ) )
        throw Error{ ErrorKind::scope, "restriction target is not contained in the partition's scope" };
    std::vector< CoordSet > blocks;
    for ( auto b : p.blocks() )
        if ( auto cut = b & target; !cut.empty() )
            blocks.push_back( cut );
    return Partition{ std::move( blocks ) };
}

// True iff every block of `fine` lies inside some block of `coarse`.
inline bool is_refinement( const Partition& fine, const Partition& coarse )
{
    if ( fine.scope() != coarse.scope() )
        throw Error{ ErrorKind::scope, "refinement test between partitions of different scopes" };
    return std::all_of( fine.blocks().begin(), fine.blocks().end(), [ & ]( CoordSet b ) {
        return b.subset_of( coarse.block_of( b.least() ) );
    } );
}

// Coarsest common refinement: all nonempty pairwise block intersections.
inline Partition meet( const Partition& a, const Partition& b )
{
    if ( a.scope() != b.scope() )
        throw Error{ ErrorKind::scope, "meet of partitions of different scopes" };
    std::vector< CoordSet > blocks;
    for ( auto x : a.blocks() )
        for ( auto y : b.blocks() )
            if ( auto cut = x & y; !cut.empty() )
                blocks.push_back( cut );
    return Partition{ std::move( blocks ) };
}

inline Partition meet_many( std::span< const Partition > family )
{
    if ( family.empty() )
        throw Error{ ErrorKind::argument, "meet of an empty family of partitions" };
    Partition result = family.front();
    for ( const auto& p : family.subspan( 1 ) )
        result = meet( result, p );
    return result;
}

// Text form: blocks separated by '|', coordinates within a block by ','.
inline std::string format_partition( const ProductSpace& space, const Partition& p )
{
    std::string out;
    for ( std::size_t i = 0; i < p.blocks().size(); ++i )
    {
        if ( i > 0 )
            out += '|';
        bool first = true;
        for ( auto k : p.blocks()[ i ] )
        {
            if ( !first )
                out += ',';
            first = false;
            out += space[ k ].name;
        }
    }
    return out;
}

inline Partition parse_partition( const ProductSpace& space, std::string_view text )
{
    auto is_name_char = []( char c ) {
        return c != ',' && c != '|' && !std::isspace( static_cast< unsigned char >( c ) );
    };
    auto skip_space = [ & ]( std::size_t i ) {
        while ( i < text.size() && std::isspace( static_cast< unsigned char >( text[ i ] ) ) )
            ++i;
        return i;
    };

    std::vector< CoordSet > blocks;
    std::size_t i = skip_space( 0 );
    if ( i == text.size() )
        return Partition{};

    CoordSet current;
    while ( true )
    {
        i = skip_space( i );
        auto start = i;
        while ( i < text.size() && is_name_char( text[ i ] ) )
            ++i;
        if ( start == i )
            throw ParseError{ "expected a coordinate name", start };
        std::string name{ text.substr( start, i - start ) };
        auto k = space.find( name );
        if ( !k )
            throw ParseError{ "unknown coordinate '" + name + "'", start };
        if ( current.contains( *k ) )
            throw ParseError{ "coordinate '" + name + "' repeated in a block", start };
        current = current.with( *k );

        i = skip_space( i );
        if ( i == text.size() )
            break;
        if ( text[ i ] == '|' )
        {
            blocks.push_back( current );
            current = {};
        }
        else if ( text[ i ] != ',' )
            throw ParseError{ "expected ',' or '|'", i };
        ++i;
    }
    blocks.push_back( current );

    CoordSet seen;
    for ( auto b : blocks )
    {
        if ( !b.disjoint( seen ) )
            throw Error{ ErrorKind::partition, "coordinate '" + space[ ( b & seen ).least() ].name + "' appears in two blocks" };
        seen = seen | b;
    }
    return Partition{ std::move( blocks ) };
}

} // namespace semsplit
