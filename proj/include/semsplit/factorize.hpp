#pragma once

// Factorization of model sets.
//
// A partition A = {A_1, ..., A_n} of scope(X) factorizes X when X is exactly
// the set of recombinations: assignments whose restriction to every block A_i
// lies in the projection X|A_i. X is always contained in its recombinations,
// so a factorization fails precisely when some recombination is missing
// from X; that recombination is reported as a witness.

#include "semsplit/core.hpp"
#include "semsplit/partition.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace semsplit
{

struct FactorizationReport
{
    Partition partition;
    bool holds = false;
    std::optional< Assignment > witness; // present iff !holds
};

namespace detail
{

// Walks the recombinations of a model set's block projections in canonical
// (lexicographic) order. Every branch of the walk ends in a recombination:
// blocks are independent, so a value that keeps its own block consistent
// never leads to a dead end.
class RecombinationWalk
{
    const ModelSet& _x;
    ScopeCodec _full;
    std::vector< ScopeCodec > _block_codecs;
    std::vector< std::size_t > _block_of_depth;
    std::vector< std::size_t > _pos_in_block;
    std::vector< std::vector< Code > > _candidates; // per block, projections still compatible
    std::optional< Code > _missing;

public:
    RecombinationWalk( const ModelSet& x, const Partition& p ) : _x{ x }, _full{ *x.space(), x.scope() }
    {
        const auto& space = *x.space();
        for ( auto b : p.blocks() )
        {
            _block_codecs.emplace_back( space, b );
            auto proj = project_model_set( x, b );
            _candidates.emplace_back( proj.codes().begin(), proj.codes().end() );
        }
        for ( auto k : x.scope() )
        {
            for ( std::size_t i = 0; i < p.blocks().size(); ++i )
                if ( p.blocks()[ i ].contains( k ) )
                {
                    _block_of_depth.push_back( i );
                    _pos_in_block.push_back( _block_codecs[ i ].position( k ) );
                }
        }
    }

    // First recombination (in canonical order) that is not a member.
    std::optional< Code > first_missing()
    {
        _missing.reset();
        descend( 0, 0 );
        return _missing;
    }

private:
    bool descend( std::size_t depth, Code prefix )
    {
        if ( depth == _full.arity() )
        {
            if ( !_x.contains( prefix ) )
            {
                _missing = prefix;
                return true;
            }
            return false;
        }

        auto block = _block_of_depth[ depth ];
        auto pos = _pos_in_block[ depth ];
        const auto& codec = _block_codecs[ block ];
        auto saved = _candidates[ block ];

        std::vector< ValueIndex > values;
        for ( auto c : saved )
            values.push_back( codec.digit( c, pos ) );
        std::sort( values.begin(), values.end() );
        values.erase( std::unique( values.begin(), values.end() ), values.end() );

        bool found = false;
        for ( auto v : values )
        {
            auto& narrowed = _candidates[ block ];
            narrowed.clear();
            for ( auto c : saved )
                if ( codec.digit( c, pos ) == v )
                    narrowed.push_back( c );
            if ( descend( depth + 1, prefix + v * _full.weight( depth ) ) )
            {
                found = true;
                break;
            }
        }
        _candidates[ block ] = std::move( saved );
        return found;
    }
};

inline void require_same_scope( const ModelSet& x, const Partition& p )
{
    if ( p.scope() != x.scope() )
        throw Error{ ErrorKind::scope, "partition scope differs from the model set's scope" };
}

} // namespace detail

inline FactorizationReport is_factorization( const ModelSet& x, const Partition& p )
{
    detail::require_same_scope( x, p );
    // The defining condition is vacuous for the empty set.
    if ( x.empty() )
        return { p, true, std::nullopt };

    detail::RecombinationWalk walk{ x, p };
    if ( auto missing = walk.first_missing() )
        return { p, false, Assignment::from_code( x.space(), x.scope(), *missing ) };
    return { p, true, std::nullopt };
}

// All combinations of members of the factors, which live on pairwise
// disjoint scopes. The result's scope is the union of the factor scopes.
inline ModelSet compose_join( const SpacePtr& space, std::span< const ModelSet > factors,
                              Code limit = std::numeric_limits< Code >::max() )
{
    CoordSet scope;
    for ( const auto& f : factors )
    {
        if ( !same_space( f.space(), space ) )
            throw Error{ ErrorKind::scope, "factor over a different space" };
        if ( !f.scope().disjoint( scope ) )
            throw Error{ ErrorKind::partition, "factor scopes overlap" };
        scope = scope | f.scope();
    }

    Code count = 1;
    for ( const auto& f : factors )
    {
        if ( f.empty() )
            return ModelSet{ space, scope, {} };
        if ( count > limit / f.size() )
            throw Error{ ErrorKind::resource, "join exceeds the size bound " + std::to_string( limit ) };
        count *= f.size();
    }

    detail::ScopeCodec target{ *space, scope };
    std::vector< Code > codes{ 0 };
    for ( const auto& f : factors )
    {
        detail::Recoder embed{ detail::ScopeCodec{ *space, f.scope() }, target };
        std::vector< Code > next;
        next.reserve( codes.size() * f.size() );
        for ( auto prefix : codes )
            for ( auto c : f.codes() )
                next.push_back( prefix + embed( c ) );
        codes = std::move( next );
    }
    return ModelSet{ space, scope, std::move( codes ) };
}

// Same, but the factor scopes must cover `scope` exactly.
inline ModelSet compose_join( const SpacePtr& space, CoordSet scope, std::span< const ModelSet > factors,
                              Code limit = std::numeric_limits< Code >::max() )
{
    auto joined = compose_join( space, factors, limit );
    if ( joined.scope() != scope )
        throw Error{ ErrorKind::partition, "factor scopes do not cover the requested scope" };
    return joined;
}

// Lets the coordinates in `free_coords` range over their whole domains.
inline ModelSet cylinder_extend( const ModelSet& x, CoordSet free_coords,
                                 Code limit = std::numeric_limits< Code >::max() )
{
    if ( !free_coords.disjoint( x.scope() ) )
        throw Error{ ErrorKind::argument, "free coordinates overlap the model set's scope" };
    if ( !free_coords.subset_of( x.space()->all() ) )
        throw Error{ ErrorKind::scope, "free coordinates outside the space" };
    std::vector< ModelSet > factors{ x, ModelSet::full( x.space(), free_coords, limit ) };
    return compose_join( x.space(), factors, limit );
}

// The blocks' projections, in block order.
inline std::vector< ModelSet > block_projections( const ModelSet& x, const Partition& p )
{
    detail::require_same_scope( x, p );
    std::vector< ModelSet > out;
    out.reserve( p.size() );
    for ( auto b : p.blocks() )
        out.push_back( project_model_set( x, b ) );
    return out;
}

// Every A with least(scope) in A, A != scope, such that {A, scope - A}
// factorizes x; ordered by the bitmask of A.
inline std::vector< CoordSet > factorization_bipartitions( const ModelSet& x )
{
    const auto scope = x.scope();
    if ( scope.empty() )
        throw Error{ ErrorKind::argument, "bipartitions of an empty scope" };

    const auto coords = scope.indices();
    const auto anchor = CoordSet::of( { coords.front() } );
    const auto rest = coords.size() - 1;
    if ( rest >= 63 )
        throw Error{ ErrorKind::resource, "too many coordinates for bipartition search" };

    std::vector< CoordSet > subsets;
    const std::uint64_t count = std::uint64_t{ 1 } << rest;
    for ( std::uint64_t mask = 0; mask + 1 < count; ++mask )
    {
        auto side = anchor;
        for ( std::size_t j = 0; j < rest; ++j )
            if ( ( mask >> j ) & 1U )
                side = side.with( coords[ j + 1 ] );
        subsets.push_back( side );
    }
    std::sort( subsets.begin(), subsets.end() );

    std::vector< CoordSet > result;
    for ( auto side : subsets )
    {
        auto other = scope - side;
        // Cardinality law: a factorization has |X| = |X|A| * |X|A'|.
        auto left = project_model_set( x, side ).size();
        auto right = project_model_set( x, other ).size();
        if ( static_cast< unsigned __int128 >( left ) * right != x.size() )
            continue;
        if ( is_factorization( x, Partition{ { side, other } } ).holds )
            result.push_back( side );
    }
    return result;
}

// The finest factorization: meet of the one-block partition with every
// factorizing bipartition. Every factorization coarsens to such bipartitions
// and meets of factorizations factorize, so this refines every factorization.
inline Partition finest_factorization( const ModelSet& x )
{
    if ( x.scope().empty() )
        throw Error{ ErrorKind::argument, "finest factorization of an empty scope" };
    std::vector< Partition > family{ Partition::top( x.scope() ) };
    for ( auto side : factorization_bipartitions( x ) )
        family.emplace_back( std::vector< CoordSet >{ side, x.scope() - side } );
    return meet_many( family );
}

// All set partitions of `scope` (restricted growth strings), in a fixed order.
inline std::vector< Partition > all_partitions( CoordSet scope )
{
    const auto coords = scope.indices();
    std::vector< Partition > out;
    if ( coords.empty() )
    {
        out.emplace_back();
        return out;
    }
    std::vector< std::size_t > label( coords.size(), 0 );
    while ( true )
    {
        std::size_t blocks = *std::max_element( label.begin(), label.end() ) + 1;
        std::vector< CoordSet > parts( blocks );
        for ( std::size_t i = 0; i < coords.size(); ++i )
            parts[ label[ i ] ] = parts[ label[ i ] ].with( coords[ i ] );
        out.emplace_back( std::move( parts ) );

        // next restricted growth string: label[i] <= 1 + max(label[0..i))
        std::size_t i = coords.size();
        while ( --i > 0 )
        {
            std::size_t prefix_max = *std::max_element( label.begin(), label.begin() + static_cast< std::ptrdiff_t >( i ) );
            if ( label[ i ] <= prefix_max )
            {
                ++label[ i ];
                std::fill( label.begin() + static_cast< std::ptrdiff_t >( i ) + 1, label.end(), 0 );
                break;
            }
        }
        if ( i == 0 )
            break;
    }
    return out;
}

inline constexpr std::size_t default_oracle_bound = 5;

// Brute force: meet of every partition of the scope whose join of block
// projections reproduces x. Independent of the bipartition search and of
// the recombination walk.
inline Partition oracle_finest( const ModelSet& x, std::size_t max_coordinates = default_oracle_bound )
{
    if ( x.scope().empty() )
        throw Error{ ErrorKind::argument, "oracle on an empty scope" };
    if ( x.scope().size() > max_coordinates )
        throw Error{ ErrorKind::resource, "oracle limited to " + std::to_string( max_coordinates ) + " coordinates, got " +
                                              std::to_string( x.scope().size() ) };
    std::vector< Partition > factorizing;
    for ( auto& p : all_partitions( x.scope() ) )
    {
        auto factors = block_projections( x, p );
        if ( compose_join( x.space(), factors ) == x )
            factorizing.push_back( std::move( p ) );
    }
    return meet_many( factorizing );
}

} // namespace semsplit
