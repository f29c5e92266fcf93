#pragma once

// Product spaces, assignments and model sets.
//
// A ProductSpace is an ordered list of coordinates, each with a finite,
// nonempty, ordered value domain. Subsets of coordinates are CoordSets
// (bitmasks over coordinate indices). An assignment over a scope is encoded
// as a mixed-radix integer whose most significant digit is the first scope
// coordinate, so numeric order of codes is the canonical lexicographic order
// (coordinate order, then domain order).

#include "semsplit/error.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <initializer_list>
#include <iterator>
#include <limits>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_set>
#include <utility>
#include <vector>

namespace semsplit
{

using Code = std::uint64_t;
using ValueIndex = std::uint32_t;

class CoordSet
{
    std::uint64_t _bits = 0;

    constexpr explicit CoordSet( std::uint64_t bits ) noexcept : _bits{ bits } {}

public:
    static constexpr std::size_t capacity = 64;

    class iterator
    {
        std::uint64_t _rest = 0;

    public:
        using iterator_category = std::forward_iterator_tag;
        using value_type = std::size_t;
        using difference_type = std::ptrdiff_t;
        using pointer = void;
        using reference = std::size_t;

        constexpr iterator() noexcept = default;
        constexpr explicit iterator( std::uint64_t rest ) noexcept : _rest{ rest } {}

        constexpr std::size_t operator*() const noexcept { return static_cast< std::size_t >( std::countr_zero( _rest ) ); }

        constexpr iterator& operator++() noexcept
        {
            _rest &= _rest - 1;
            return *this;
        }

        constexpr iterator operator++( int ) noexcept
        {
            auto old = *this;
            ++*this;
            return old;
        }

        friend constexpr bool operator==( iterator, iterator ) noexcept = default;
    };

    constexpr CoordSet() noexcept = default;

    static constexpr CoordSet from_bits( std::uint64_t bits ) noexcept { return CoordSet{ bits }; }

    static constexpr CoordSet first( std::size_t n )
    {
        if ( n > capacity )
            throw Error{ ErrorKind::resource, "at most 64 coordinates are supported" };
        return CoordSet{ n == capacity ? ~std::uint64_t{ 0 } : ( std::uint64_t{ 1 } << n ) - 1 };
    }

    static constexpr CoordSet of( std::initializer_list< std::size_t > indices )
    {
        CoordSet result;
        for ( auto i : indices )
            result = result.with( i );
        return result;
    }

    [[nodiscard]] constexpr std::uint64_t bits() const noexcept { return _bits; }
    [[nodiscard]] constexpr bool empty() const noexcept { return _bits == 0; }
    [[nodiscard]] constexpr std::size_t size() const noexcept { return static_cast< std::size_t >( std::popcount( _bits ) ); }

    [[nodiscard]] constexpr bool contains( std::size_t i ) const noexcept
    {
        return i < capacity && ( ( _bits >> i ) & 1U ) != 0;
    }

    [[nodiscard]] constexpr CoordSet with( std::size_t i ) const
    {
        if ( i >= capacity )
            throw Error{ ErrorKind::resource, "at most 64 coordinates are supported" };
        return CoordSet{ _bits | ( std::uint64_t{ 1 } << i ) };
    }

    [[nodiscard]] constexpr CoordSet without( std::size_t i ) const noexcept
    {
        return i < capacity ? CoordSet{ _bits & ~( std::uint64_t{ 1 } << i ) } : *this;
    }

    // Least coordinate index; only meaningful for nonempty sets.
    [[nodiscard]] constexpr std::size_t least() const noexcept { return static_cast< std::size_t >( std::countr_zero( _bits ) ); }

    [[nodiscard]] constexpr bool subset_of( CoordSet other ) const noexcept { return ( _bits & ~other._bits ) == 0; }
    [[nodiscard]] constexpr bool disjoint( CoordSet other ) const noexcept { return ( _bits & other._bits ) == 0; }

    [[nodiscard]] constexpr iterator begin() const noexcept { return iterator{ _bits }; }
    [[nodiscard]] constexpr iterator end() const noexcept { return iterator{ 0 }; }

    [[nodiscard]] std::vector< std::size_t > indices() const { return { begin(), end() }; }

    friend constexpr CoordSet operator|( CoordSet a, CoordSet b ) noexcept { return CoordSet{ a._bits | b._bits }; }
    friend constexpr CoordSet operator&( CoordSet a, CoordSet b ) noexcept { return CoordSet{ a._bits & b._bits }; }
    friend constexpr CoordSet operator-( CoordSet a, CoordSet b ) noexcept { return CoordSet{ a._bits & ~b._bits }; }

    friend constexpr bool operator==( CoordSet, CoordSet ) noexcept = default;
    friend constexpr auto operator<=>( CoordSet, CoordSet ) noexcept = default;
};

struct Coordinate
{
    std::string name;
    std::vector< std::string > domain;

    friend bool operator==( const Coordinate&, const Coordinate& ) = default;
};

class ProductSpace
{
    std::vector< Coordinate > _coordinates;

public:
    explicit ProductSpace( std::vector< Coordinate > coordinates ) : _coordinates{ std::move( coordinates ) }
    {
        if ( _coordinates.size() > CoordSet::capacity )
            throw Error{ ErrorKind::resource, "at most 64 coordinates are supported" };

        std::unordered_set< std::string_view > names;
        for ( const auto& c : _coordinates )
        {
            if ( c.name.empty() )
                throw Error{ ErrorKind::argument, "coordinate names must be nonempty" };
            if ( !names.insert( c.name ).second )
                throw Error{ ErrorKind::argument, "duplicate coordinate name '" + c.name + "'" };
            if ( c.domain.empty() )
                throw Error{ ErrorKind::argument, "coordinate '" + c.name + "' has an empty domain" };
            if ( c.domain.size() > std::numeric_limits< ValueIndex >::max() )
                throw Error{ ErrorKind::resource, "domain of '" + c.name + "' is too large" };

            std::unordered_set< std::string_view > values;
            for ( const auto& v : c.domain )
                if ( !values.insert( v ).second )
                    throw Error{ ErrorKind::argument, "duplicate value '" + v + "' in domain of '" + c.name + "'" };
        }
    }

    static std::shared_ptr< const ProductSpace > make( std::vector< Coordinate > coordinates )
    {
        return std::make_shared< const ProductSpace >( std::move( coordinates ) );
    }

    // Every coordinate gets the domain {0, 1}.
    static std::shared_ptr< const ProductSpace > boolean( const std::vector< std::string >& names )
    {
        std::vector< Coordinate > coordinates;
        coordinates.reserve( names.size() );
        for ( const auto& n : names )
            coordinates.push_back( { n, { "0", "1" } } );
        return make( std::move( coordinates ) );
    }

    [[nodiscard]] std::size_t size() const noexcept { return _coordinates.size(); }
    [[nodiscard]] const Coordinate& operator[]( std::size_t i ) const { return _coordinates.at( i ); }
    [[nodiscard]] std::span< const Coordinate > coordinates() const noexcept { return _coordinates; }
    [[nodiscard]] CoordSet all() const { return CoordSet::first( _coordinates.size() ); }

    [[nodiscard]] std::optional< std::size_t > find( std::string_view name ) const noexcept
    {
        for ( std::size_t i = 0; i < _coordinates.size(); ++i )
            if ( _coordinates[ i ].name == name )
                return i;
        return std::nullopt;
    }

    [[nodiscard]] std::size_t index( std::string_view name ) const
    {
        if ( auto i = find( name ) )
            return *i;
        throw Error{ ErrorKind::scope, "unknown coordinate '" + std::string{ name } + "'" };
    }

    [[nodiscard]] CoordSet coords( std::span< const std::string > names ) const
    {
        CoordSet result;
        for ( const auto& n : names )
            result = result.with( index( n ) );
        return result;
    }

    [[nodiscard]] CoordSet coords( std::initializer_list< std::string_view > names ) const
    {
        CoordSet result;
        for ( auto n : names )
            result = result.with( index( n ) );
        return result;
    }

    [[nodiscard]] std::optional< ValueIndex > find_value( std::size_t coordinate, std::string_view symbol ) const
    {
        const auto& domain = ( *this )[ coordinate ].domain;
        for ( std::size_t v = 0; v < domain.size(); ++v )
            if ( domain[ v ] == symbol )
                return static_cast< ValueIndex >( v );
        return std::nullopt;
    }

    [[nodiscard]] ValueIndex value( std::size_t coordinate, std::string_view symbol ) const
    {
        if ( auto v = find_value( coordinate, symbol ) )
            return *v;
        throw Error{ ErrorKind::scope,
                     "value '" + std::string{ symbol } + "' is not in the domain of '" + ( *this )[ coordinate ].name + "'" };
    }

    [[nodiscard]] bool is_boolean( std::size_t coordinate ) const
    {
        const auto& d = ( *this )[ coordinate ].domain;
        return d.size() == 2 && find_value( coordinate, "0" ) && find_value( coordinate, "1" );
    }

    [[nodiscard]] std::vector< std::string > names( CoordSet scope ) const
    {
        std::vector< std::string > result;
        for ( auto i : scope )
            result.push_back( ( *this )[ i ].name );
        return result;
    }

    friend bool operator==( const ProductSpace&, const ProductSpace& ) = default;
};

using SpacePtr = std::shared_ptr< const ProductSpace >;

inline bool same_space( const SpacePtr& a, const SpacePtr& b ) noexcept
{
    return a == b || ( a && b && *a == *b );
}

namespace detail
{

// Mixed-radix codec for one scope of a space.
class ScopeCodec
{
    std::vector< std::size_t > _coords;
    std::vector< Code > _radix;
    std::vector< Code > _weight;
    Code _size = 1;

public:
    ScopeCodec( const ProductSpace& space, CoordSet scope )
    {
        if ( !scope.subset_of( space.all() ) )
            throw Error{ ErrorKind::scope, "scope mentions coordinates outside the space" };
        _coords = scope.indices();
        _radix.resize( _coords.size() );
        _weight.resize( _coords.size() );
        for ( std::size_t pos = _coords.size(); pos-- > 0; )
        {
            _radix[ pos ] = space[ _coords[ pos ] ].domain.size();
            _weight[ pos ] = _size;
            if ( _size > std::numeric_limits< Code >::max() / _radix[ pos ] )
                throw Error{ ErrorKind::resource, "product over scope does not fit a 64-bit code" };
            _size *= _radix[ pos ];
        }
    }

    // Number of total assignments over the scope.
    [[nodiscard]] Code size() const noexcept { return _size; }
    [[nodiscard]] std::size_t arity() const noexcept { return _coords.size(); }
    [[nodiscard]] std::span< const std::size_t > coords() const noexcept { return _coords; }
    [[nodiscard]] Code radix( std::size_t pos ) const { return _radix[ pos ]; }
    [[nodiscard]] Code weight( std::size_t pos ) const { return _weight[ pos ]; }

    [[nodiscard]] ValueIndex digit( Code code, std::size_t pos ) const
    {
        return static_cast< ValueIndex >( ( code / _weight[ pos ] ) % _radix[ pos ] );
    }

    [[nodiscard]] std::size_t position( std::size_t coordinate ) const
    {
        auto it = std::find( _coords.begin(), _coords.end(), coordinate );
        if ( it == _coords.end() )
            throw Error{ ErrorKind::scope, "coordinate outside scope" };
        return static_cast< std::size_t >( it - _coords.begin() );
    }

    [[nodiscard]] Code encode( std::span< const ValueIndex > digits ) const
    {
        Code code = 0;
        for ( std::size_t pos = 0; pos < _coords.size(); ++pos )
            code += digits[ pos ] * _weight[ pos ];
        return code;
    }

    [[nodiscard]] std::vector< ValueIndex > decode( Code code ) const
    {
        std::vector< ValueIndex > digits( _coords.size() );
        for ( std::size_t pos = 0; pos < _coords.size(); ++pos )
            digits[ pos ] = digit( code, pos );
        return digits;
    }
};

// Re-encodes codes of one scope as codes of another: a projection when the
// target is a subset, an embedding when the source is (missing digits are 0).
class Recoder
{
    struct Term
    {
        Code source_weight;
        Code source_radix;
        Code target_weight;
    };
    std::vector< Term > _terms;

public:
    Recoder( const ScopeCodec& source, const ScopeCodec& target )
    {
        auto src = source.coords();
        auto tgt = target.coords();
        for ( std::size_t t = 0; t < tgt.size(); ++t )
        {
            auto it = std::find( src.begin(), src.end(), tgt[ t ] );
            if ( it == src.end() )
                continue;
            auto s = static_cast< std::size_t >( it - src.begin() );
            _terms.push_back( { source.weight( s ), source.radix( s ), target.weight( t ) } );
        }
    }

    [[nodiscard]] Code operator()( Code code ) const noexcept
    {
        Code out = 0;
        for ( const auto& t : _terms )
            out += ( ( code / t.source_weight ) % t.source_radix ) * t.target_weight;
        return out;
    }
};

} // namespace detail

class Assignment
{
    SpacePtr _space;
    CoordSet _scope;
    std::vector< ValueIndex > _values; // one per scope coordinate, in coordinate order

public:
    Assignment( SpacePtr space, CoordSet scope, std::vector< ValueIndex > values )
            : _space{ std::move( space ) }, _scope{ scope }, _values{ std::move( values ) }
    {
        if ( !_space )
            throw Error{ ErrorKind::argument, "assignment without a space" };
        if ( !_scope.subset_of( _space->all() ) )
            throw Error{ ErrorKind::scope, "assignment scope mentions coordinates outside the space" };
        if ( _values.size() != _scope.size() )
            throw Error{ ErrorKind::argument, "assignment needs exactly one value per scope coordinate" };
        std::size_t pos = 0;
        for ( auto k : _scope )
            if ( _values[ pos++ ] >= ( *_space )[ k ].domain.size() )
                throw Error{ ErrorKind::scope, "value outside the domain of '" + ( *_space )[ k ].name + "'" };
    }

    // Build from (coordinate name, value symbol) pairs.
    static Assignment of( SpacePtr space, std::initializer_list< std::pair< std::string_view, std::string_view > > entries )
    {
        std::vector< std::pair< std::size_t, ValueIndex > > indexed;
        CoordSet scope;
        for ( auto [ name, symbol ] : entries )
        {
            auto k = space->index( name );
            if ( scope.contains( k ) )
                throw Error{ ErrorKind::argument, "coordinate '" + std::string{ name } + "' assigned twice" };
            scope = scope.with( k );
            indexed.emplace_back( k, space->value( k, symbol ) );
        }
        std::sort( indexed.begin(), indexed.end() );
        std::vector< ValueIndex > values;
        for ( auto [ k, v ] : indexed )
            values.push_back( v );
        return Assignment{ std::move( space ), scope, std::move( values ) };
    }

    static Assignment from_code( SpacePtr space, CoordSet scope, Code code )
    {
        detail::ScopeCodec codec{ *space, scope };
        if ( code >= codec.size() )
            throw Error{ ErrorKind::scope, "code outside the product over the scope" };
        return Assignment{ std::move( space ), scope, codec.decode( code ) };
    }

    [[nodiscard]] const SpacePtr& space() const noexcept { return _space; }
    [[nodiscard]] CoordSet scope() const noexcept { return _scope; }
    [[nodiscard]] std::span< const ValueIndex > values() const noexcept { return _values; }

    [[nodiscard]] ValueIndex value( std::size_t coordinate ) const
    {
        if ( !_scope.contains( coordinate ) )
            throw Error{ ErrorKind::scope, "coordinate outside the assignment's scope" };
        auto below = _scope & CoordSet::first( coordinate );
        return _values[ below.size() ];
    }

    [[nodiscard]] const std::string& symbol( std::size_t coordinate ) const
    {
        return ( *_space )[ coordinate ].domain[ value( coordinate ) ];
    }

    [[nodiscard]] const std::string& symbol( std::string_view name ) const { return symbol( _space->index( name ) ); }

    [[nodiscard]] Code code() const { return detail::ScopeCodec{ *_space, _scope }.encode( _values ); }

    // Value symbols in coordinate order, e.g. "1 0 1".
    [[nodiscard]] std::string row() const
    {
        std::string out;
        std::size_t pos = 0;
        for ( auto k : _scope )
        {
            if ( pos > 0 )
                out += ' ';
            out += ( *_space )[ k ].domain[ _values[ pos++ ] ];
        }
        return out;
    }

    // e.g. "{p=1, q=0}"
    [[nodiscard]] std::string to_string() const
    {
        std::string out = "{";
        std::size_t pos = 0;
        for ( auto k : _scope )
        {
            if ( pos > 0 )
                out += ", ";
            out += ( *_space )[ k ].name + "=" + ( *_space )[ k ].domain[ _values[ pos++ ] ];
        }
        return out + "}";
    }

    friend bool operator==( const Assignment& a, const Assignment& b )
    {
        return a._scope == b._scope && a._values == b._values && same_space( a._space, b._space );
    }
};

class ModelSet
{
    SpacePtr _space;
    CoordSet _scope;
    Code _product = 1;
    std::vector< Code > _codes; // sorted, unique
    std::shared_ptr< const std::vector< std::uint64_t > > _table; // membership bits, when affordable

    // Dense tables are built only when they are small relative to the member list.
    static constexpr Code dense_limit = Code{ 1 } << 24;

public:
    ModelSet( SpacePtr space, CoordSet scope, std::vector< Code > codes )
            : _space{ std::move( space ) }, _scope{ scope }, _codes{ std::move( codes ) }
    {
        if ( !_space )
            throw Error{ ErrorKind::argument, "model set without a space" };
        detail::ScopeCodec codec{ *_space, _scope };
        _product = codec.size();
        std::sort( _codes.begin(), _codes.end() );
        _codes.erase( std::unique( _codes.begin(), _codes.end() ), _codes.end() );
        if ( !_codes.empty() && _codes.back() >= _product )
            throw Error{ ErrorKind::scope, "member code outside the product over the scope" };

        if ( _product <= dense_limit && _product / 64 <= 16 * ( _codes.size() + 1 ) )
        {
            auto table = std::make_shared< std::vector< std::uint64_t > >( ( _product + 63 ) / 64, 0 );
            for ( auto c : _codes )
                ( *table )[ c / 64 ] |= std::uint64_t{ 1 } << ( c % 64 );
            _table = std::move( table );
        }
    }

    static ModelSet from_assignments( SpacePtr space, CoordSet scope, std::span< const Assignment > members )
    {
        std::vector< Code > codes;
        codes.reserve( members.size() );
        for ( const auto& m : members )
        {
            if ( m.scope() != scope || !same_space( m.space(), space ) )
                throw Error{ ErrorKind::scope, "member " + m.to_string() + " does not match the model set's scope" };
            codes.push_back( m.code() );
        }
        return ModelSet{ std::move( space ), scope, std::move( codes ) };
    }

    // Every total assignment over the scope.
    static ModelSet full( SpacePtr space, CoordSet scope, Code limit = std::numeric_limits< Code >::max() )
    {
        detail::ScopeCodec codec{ *space, scope };
        if ( codec.size() > limit )
            throw Error{ ErrorKind::resource, "full product has " + std::to_string( codec.size() ) +
                                                  " points, above the bound " + std::to_string( limit ) };
        std::vector< Code > codes( codec.size() );
        for ( Code c = 0; c < codec.size(); ++c )
            codes[ c ] = c;
        return ModelSet{ std::move( space ), scope, std::move( codes ) };
    }

    [[nodiscard]] const SpacePtr& space() const noexcept { return _space; }
    [[nodiscard]] CoordSet scope() const noexcept { return _scope; }
    [[nodiscard]] std::size_t size() const noexcept { return _codes.size(); }
    [[nodiscard]] bool empty() const noexcept { return _codes.empty(); }
    [[nodiscard]] std::span< const Code > codes() const noexcept { return _codes; }

    // Size of the full product over the scope.
    [[nodiscard]] Code product_size() const noexcept { return _product; }

    [[nodiscard]] bool contains( Code code ) const noexcept
    {
        if ( code >= _product )
            return false;
        if ( _table )
            return ( ( *_table )[ code / 64 ] >> ( code % 64 ) ) & 1U;
        return std::binary_search( _codes.begin(), _codes.end(), code );
    }

    [[nodiscard]] bool contains( const Assignment& a ) const
    {
        return a.scope() == _scope && same_space( a.space(), _space ) && contains( a.code() );
    }

    [[nodiscard]] Assignment member( std::size_t i ) const { return Assignment::from_code( _space, _scope, _codes.at( i ) ); }

    [[nodiscard]] std::vector< Assignment > members() const
    {
        std::vector< Assignment > out;
        out.reserve( _codes.size() );
        detail::ScopeCodec codec{ *_space, _scope };
        for ( auto c : _codes )
            out.emplace_back( _space, _scope, codec.decode( c ) );
        return out;
    }

    [[nodiscard]] bool subset_of( const ModelSet& other ) const
    {
        return _scope == other._scope && std::includes( other._codes.begin(), other._codes.end(), _codes.begin(), _codes.end() );
    }

    friend bool operator==( const ModelSet& a, const ModelSet& b )
    {
        return a._scope == b._scope && a._codes == b._codes && same_space( a._space, b._space );
    }
};

inline ModelSet intersect( const ModelSet& a, const ModelSet& b )
{
    if ( a.scope() != b.scope() || !same_space( a.space(), b.space() ) )
        throw Error{ ErrorKind::scope, "intersection of model sets over different scopes" };
    std::vector< Code > out;
    std::set_intersection( a.codes().begin(), a.codes().end(), b.codes().begin(), b.codes().end(), std::back_inserter( out ) );
    return ModelSet{ a.space(), a.scope(), std::move( out ) };
}

inline Assignment restrict_assignment( const Assignment& sigma, CoordSet target )
{
    if ( !target.subset_of( sigma.scope() ) )
        throw Error{ ErrorKind::scope, "restriction target is not contained in the scope of " + sigma.to_string() };
    std::vector< ValueIndex > values;
    values.reserve( target.size() );
    for ( auto k : target )
        values.push_back( sigma.value( k ) );
    return Assignment{ sigma.space(), target, std::move( values ) };
}

inline ModelSet project_model_set( const ModelSet& x, CoordSet target )
{
    if ( !target.subset_of( x.scope() ) )
        throw Error{ ErrorKind::scope, "projection target is not contained in the model set's scope" };
    if ( target == x.scope() )
        return x;
    detail::ScopeCodec source{ *x.space(), x.scope() };
    detail::ScopeCodec dest{ *x.space(), target };
    detail::Recoder project{ source, dest };
    std::vector< Code > out;
    out.reserve( x.size() );
    for ( auto c : x.codes() )
        out.push_back( project( c ) );
    return ModelSet{ x.space(), target, std::move( out ) };
}

// The first member of x (canonical order) extending sigma.
inline Assignment complete_assignment( const Assignment& sigma, const ModelSet& x )
{
    if ( !same_space( sigma.space(), x.space() ) || !sigma.scope().subset_of( x.scope() ) )
        throw Error{ ErrorKind::scope, "assignment scope is not contained in the model set's scope" };
    if ( x.empty() )
        throw Error{ ErrorKind::empty_set, "cannot complete " + sigma.to_string() + " inside an empty model set" };

    detail::ScopeCodec source{ *x.space(), x.scope() };
    detail::ScopeCodec dest{ *x.space(), sigma.scope() };
    detail::Recoder project{ source, dest };
    const auto wanted = sigma.code();
    for ( auto c : x.codes() )
        if ( project( c ) == wanted )
            return Assignment{ x.space(), x.scope(), source.decode( c ) };
    throw Error{ ErrorKind::no_completion, sigma.to_string() + " has no extension in the model set" };
}

// Values attained at one coordinate, in domain order.
inline std::vector< std::string > coordinate_values( const ModelSet& x, std::size_t coordinate )
{
    if ( !x.scope().contains( coordinate ) )
        throw Error{ ErrorKind::scope, "coordinate outside the model set's scope" };
    const auto& domain = ( *x.space() )[ coordinate ].domain;
    std::vector< bool > seen( domain.size(), false );
    detail::ScopeCodec codec{ *x.space(), x.scope() };
    auto pos = codec.position( coordinate );
    for ( auto c : x.codes() )
        seen[ codec.digit( c, pos ) ] = true;
    std::vector< std::string > out;
    for ( std::size_t v = 0; v < domain.size(); ++v )
        if ( seen[ v ] )
            out.push_back( domain[ v ] );
    return out;
}

inline std::vector< std::string > coordinate_values( const ModelSet& x, std::string_view name )
{
    return coordinate_values( x, x.space()->index( name ) );
}

} // namespace semsplit
