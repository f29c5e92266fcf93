#pragma once

// Random generators and brute-force oracles shared by the property and
// acceptance suites. The oracles here work on Assignment values and
// std::set, deliberately avoiding the codecs and walks of the library.

#include "semsplit/semsplit.hpp"

#include <cstdint>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

namespace semsplit::testing
{

using Rng = std::mt19937_64;

inline std::size_t uniform( Rng& rng, std::size_t lo, std::size_t hi )
{
    return std::uniform_int_distribution< std::size_t >{ lo, hi }( rng );
}

inline bool coin( Rng& rng, double p = 0.5 ) { return std::bernoulli_distribution{ p }( rng ); }

inline SpacePtr random_space( Rng& rng, std::size_t min_coords, std::size_t max_coords, std::size_t max_domain )
{
    static const char* names[] = { "p", "q", "r", "s", "t", "u", "v", "w" };
    std::vector< Coordinate > coords;
    auto n = uniform( rng, min_coords, max_coords );
    for ( std::size_t i = 0; i < n; ++i )
    {
        auto d = uniform( rng, 1, max_domain );
        std::vector< std::string > domain;
        for ( std::size_t v = 0; v < d; ++v )
            domain.push_back( std::to_string( v ) );
        coords.push_back( { names[ i ], domain } );
    }
    return ProductSpace::make( std::move( coords ) );
}

inline SpacePtr boolean_space( std::size_t n )
{
    static const char* names[] = { "p", "q", "r", "s", "t", "u", "v", "w" };
    return ProductSpace::boolean( { names, names + n } );
}

inline ModelSet random_subset( Rng& rng, const SpacePtr& space, CoordSet scope, double density = 0.5 )
{
    auto full = ModelSet::full( space, scope );
    std::vector< Code > codes;
    for ( auto c : full.codes() )
        if ( coin( rng, density ) )
            codes.push_back( c );
    return ModelSet{ space, scope, std::move( codes ) };
}

inline ModelSet random_nonempty_subset( Rng& rng, const SpacePtr& space, CoordSet scope, double density = 0.5 )
{
    while ( true )
    {
        auto x = random_subset( rng, space, scope, density );
        if ( !x.empty() )
            return x;
    }
}

inline Partition random_partition( Rng& rng, CoordSet scope )
{
    if ( scope.empty() )
        return {};
    auto coords = scope.indices();
    auto max_blocks = uniform( rng, 1, coords.size() );
    std::vector< CoordSet > blocks( max_blocks );
    for ( auto k : coords )
    {
        auto b = uniform( rng, 0, max_blocks - 1 );
        blocks[ b ] = blocks[ b ].with( k );
    }
    std::erase_if( blocks, []( CoordSet b ) { return b.empty(); } );
    return Partition{ std::move( blocks ) };
}

// Merge blocks of p at random; the result is coarser than p.
inline Partition random_coarsening( Rng& rng, const Partition& p )
{
    if ( p.size() == 0 )
        return p;
    auto target = uniform( rng, 1, p.size() );
    std::vector< CoordSet > merged( target );
    for ( auto b : p.blocks() )
    {
        auto i = uniform( rng, 0, target - 1 );
        merged[ i ] = merged[ i ] | b;
    }
    std::erase_if( merged, []( CoordSet b ) { return b.empty(); } );
    return Partition{ std::move( merged ) };
}

// A model set factorized by p by construction: join of random nonempty
// factors, one per block.
inline ModelSet planted( Rng& rng, const SpacePtr& space, const Partition& p, double density = 0.5 )
{
    std::vector< ModelSet > factors;
    for ( auto b : p.blocks() )
        factors.push_back( random_nonempty_subset( rng, space, b, density ) );
    return compose_join( space, factors );
}

// Definition-level factorization check: enumerate every total assignment of
// the scope and compare membership with "every block restriction occurs".
inline bool brute_is_factorization( const ModelSet& x, const Partition& p )
{
    if ( x.empty() )
        return true;
    auto members = x.members();
    std::vector< std::set< std::vector< ValueIndex > > > projections( p.size() );
    for ( const auto& m : members )
        for ( std::size_t i = 0; i < p.size(); ++i )
        {
            auto r = restrict_assignment( m, p.blocks()[ i ] );
            projections[ i ].insert( { r.values().begin(), r.values().end() } );
        }
    std::set< std::vector< ValueIndex > > in_x;
    for ( const auto& m : members )
        in_x.insert( { m.values().begin(), m.values().end() } );

    // odometer over the scope
    const auto coords = x.scope().indices();
    std::vector< ValueIndex > digits( coords.size(), 0 );
    while ( true )
    {
        Assignment sigma{ x.space(), x.scope(), digits };
        bool recombination = true;
        for ( std::size_t i = 0; i < p.size() && recombination; ++i )
        {
            auto r = restrict_assignment( sigma, p.blocks()[ i ] );
            recombination = projections[ i ].count( { r.values().begin(), r.values().end() } ) > 0;
        }
        if ( recombination != ( in_x.count( digits ) > 0 ) )
            return false;

        std::size_t pos = coords.size();
        while ( pos > 0 )
        {
            --pos;
            if ( ++digits[ pos ] < ( *x.space() )[ coords[ pos ] ].domain.size() )
                break;
            digits[ pos ] = 0;
            if ( pos == 0 )
                return true;
        }
        if ( coords.empty() )
            return true;
    }
}

inline std::size_t product_of_projection_sizes( const ModelSet& x, const Partition& p )
{
    std::size_t prod = 1;
    for ( auto b : p.blocks() )
        prod *= project_model_set( x, b ).size();
    return prod;
}

// Random formula over the given variable names.
inline Formula random_formula( Rng& rng, const std::vector< std::string >& vars, std::size_t depth )
{
    if ( depth == 0 || coin( rng, 0.25 ) )
    {
        auto pick = uniform( rng, 0, vars.size() + 1 );
        if ( vars.empty() || pick == vars.size() + 1 )
            return coin( rng ) ? Formula::truth() : Formula::falsity();
        return Formula::variable( vars[ std::min( pick, vars.size() - 1 ) ] );
    }
    switch ( uniform( rng, 0, 5 ) )
    {
    case 0: return Formula::negation( random_formula( rng, vars, depth - 1 ) );
    case 1: return Formula::conjunction( random_formula( rng, vars, depth - 1 ), random_formula( rng, vars, depth - 1 ) );
    case 2: return Formula::disjunction( random_formula( rng, vars, depth - 1 ), random_formula( rng, vars, depth - 1 ) );
    case 3: return Formula::implication( random_formula( rng, vars, depth - 1 ), random_formula( rng, vars, depth - 1 ) );
    case 4: return Formula::biconditional( random_formula( rng, vars, depth - 1 ), random_formula( rng, vars, depth - 1 ) );
    default: return Formula::negation( Formula::negation( random_formula( rng, vars, depth - 1 ) ) );
    }
}

// Direct recursive truth-table evaluation.
inline bool evaluate( const Formula& f, const std::map< std::string, bool >& valuation )
{
    using K = Formula::Kind;
    switch ( f.kind() )
    {
    case K::variable: return valuation.at( f.name() );
    case K::truth: return true;
    case K::falsity: return false;
    case K::negation: return !evaluate( f.operand( 0 ), valuation );
    case K::conjunction: return evaluate( f.operand( 0 ), valuation ) && evaluate( f.operand( 1 ), valuation );
    case K::disjunction: return evaluate( f.operand( 0 ), valuation ) || evaluate( f.operand( 1 ), valuation );
    case K::implication: return !evaluate( f.operand( 0 ), valuation ) || evaluate( f.operand( 1 ), valuation );
    case K::biconditional: return evaluate( f.operand( 0 ), valuation ) == evaluate( f.operand( 1 ), valuation );
    }
    return false;
}

// Truth-table models of a theory, as rows of 0/1 symbols in variable order.
inline std::set< std::string > truth_table_models( const Theory& t )
{
    std::set< std::string > rows;
    const auto vars = t.variables();
    const std::size_t n = vars.size();
    for ( std::uint64_t bits = 0; bits < ( std::uint64_t{ 1 } << n ); ++bits )
    {
        std::map< std::string, bool > valuation;
        std::string row;
        for ( std::size_t i = 0; i < n; ++i )
        {
            bool value = ( bits >> ( n - 1 - i ) ) & 1U;
            valuation[ vars[ i ] ] = value;
            row += ( i ? " " : "" ) + std::string{ value ? "1" : "0" };
        }
        bool ok = true;
        for ( const auto& f : t.formulas() )
            ok = ok && evaluate( f, valuation );
        if ( ok )
            rows.insert( row );
    }
    return rows;
}

inline std::set< std::string > rows_of( const ModelSet& x )
{
    std::set< std::string > rows;
    for ( const auto& m : x.members() )
        rows.insert( m.row() );
    return rows;
}

// Builds a model set from rows like "1 0 1" over the full space.
inline ModelSet rows( const SpacePtr& space, std::initializer_list< std::string_view > lines )
{
    std::vector< Assignment > members;
    for ( auto line : lines )
    {
        std::vector< ValueIndex > values;
        std::size_t k = 0;
        std::size_t i = 0;
        while ( i < line.size() )
        {
            if ( line[ i ] == ' ' )
            {
                ++i;
                continue;
            }
            auto j = line.find( ' ', i );
            auto symbol = line.substr( i, j == std::string_view::npos ? std::string_view::npos : j - i );
            values.push_back( space->value( k++, symbol ) );
            i = j == std::string_view::npos ? line.size() : j;
        }
        members.emplace_back( space, space->all(), std::move( values ) );
    }
    return ModelSet::from_assignments( space, space->all(), members );
}

inline Partition partition( const SpacePtr& space, std::string_view text ) { return parse_partition( *space, text ); }

} // namespace semsplit::testing
