#pragma once

#include "semsplit/core.hpp"
#include "semsplit/logic.hpp"

#include <algorithm>
#include <limits>
#include <utility>
#include <vector>

namespace semsplit
{

// Number of coordinates on which two assignments over the same scope differ.
// Distinct symbols count 1 regardless of the domain.
inline std::size_t hamming_distance( const Assignment& a, const Assignment& b )
{
    if ( a.scope() != b.scope() || !same_space( a.space(), b.space() ) )
        throw Error{ ErrorKind::scope, "Hamming distance between assignments of different scopes" };
    std::size_t d = 0;
    for ( std::size_t i = 0; i < a.values().size(); ++i )
        d += a.values()[ i ] != b.values()[ i ];
    return d;
}

struct RevisionOutcome
{
    ModelSet revised;
    std::size_t distance = 0;
    std::vector< std::pair< Assignment, std::size_t > > per_model_distance; // in revised order
};

namespace detail
{

inline std::size_t code_distance( const ScopeCodec& codec, Code a, Code b )
{
    std::size_t d = 0;
    for ( std::size_t pos = 0; pos < codec.arity(); ++pos )
        d += codec.digit( a, pos ) != codec.digit( b, pos );
    return d;
}

} // namespace detail

// Dalal-style revision: the models of the input at minimal Hamming distance
// from the prior set, where the distance of a model to a set is the minimum
// over the set's members.
inline RevisionOutcome revise( const ModelSet& prior, const ModelSet& input )
{
    if ( prior.scope() != input.scope() || !same_space( prior.space(), input.space() ) )
        throw Error{ ErrorKind::scope, "revision input is over a different scope" };
    if ( prior.empty() )
        throw Error{ ErrorKind::revision, "cannot revise an empty model set" };
    if ( input.empty() )
        throw Error{ ErrorKind::revision, "revision input has no models" };

    detail::ScopeCodec codec{ *prior.space(), prior.scope() };
    std::vector< std::size_t > distance_to_prior;
    distance_to_prior.reserve( input.size() );
    std::size_t best = std::numeric_limits< std::size_t >::max();
    for ( auto rho : input.codes() )
    {
        std::size_t d = std::numeric_limits< std::size_t >::max();
        for ( auto sigma : prior.codes() )
        {
            d = std::min( d, detail::code_distance( codec, rho, sigma ) );
            if ( d == 0 )
                break;
        }
        distance_to_prior.push_back( d );
        best = std::min( best, d );
    }

    std::vector< Code > kept;
    for ( std::size_t i = 0; i < input.size(); ++i )
        if ( distance_to_prior[ i ] == best )
            kept.push_back( input.codes()[ i ] );

    RevisionOutcome out{ ModelSet{ prior.space(), prior.scope(), std::move( kept ) }, best, {} };
    for ( auto& m : out.revised.members() )
        out.per_model_distance.emplace_back( std::move( m ), best );
    return out;
}

// The formula is evaluated over the prior's scope.
inline RevisionOutcome revise( const ModelSet& prior, const Formula& input,
                               std::size_t max_coordinates = default_max_variables )
{
    return revise( prior, models_over( input, prior.space(), prior.scope(), max_coordinates ) );
}

} // namespace semsplit
