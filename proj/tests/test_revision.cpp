#include "support/generators.hpp"

#include <gtest/gtest.h>

using namespace semsplit;
using semsplit::testing::rows;
using semsplit::testing::rows_of;

TEST( HammingDistance, Examples )
{
    auto s2 = ProductSpace::boolean( { "p", "q" } );
    auto s3 = ProductSpace::boolean( { "p", "q", "r" } );
    auto a = [ & ]( const SpacePtr& s, std::string_view row ) { return rows( s, { row } ).member( 0 ); };
    EXPECT_EQ( hamming_distance( a( s2, "1 1" ), a( s2, "1 1" ) ), 0u );
    EXPECT_EQ( hamming_distance( a( s2, "1 0" ), a( s2, "0 1" ) ), 2u );
    EXPECT_EQ( hamming_distance( a( s3, "1 0 1" ), a( s3, "0 0 1" ) ), 1u );
    EXPECT_THROW( hamming_distance( a( s2, "1 1" ), a( s3, "1 1 1" ) ), Error );
}

TEST( HammingDistance, NonBooleanSymbolsCountOne )
{
    auto space = ProductSpace::make( { { "c", { "red", "green", "blue" } }, { "p", { "0", "1" } } } );
    auto x = rows( space, { "red 0", "blue 1" } );
    EXPECT_EQ( hamming_distance( x.member( 0 ), x.member( 1 ) ), 2u );
}

TEST( Revise, Examples )
{
    auto space = ProductSpace::boolean( { "p", "q" } );
    auto not_p = parse_formula( "~p" );

    // not-p models: 00 at distance 2, 01 at distance 1
    auto one = revise( rows( space, { "1 1" } ), not_p );
    EXPECT_EQ( rows_of( one.revised ), ( std::set< std::string >{ "0 1" } ) );
    EXPECT_EQ( one.distance, 1u );

    // prior {10, 11}: both not-p models at distance 1
    auto two = revise( rows( space, { "1 0", "1 1" } ), not_p );
    EXPECT_EQ( rows_of( two.revised ), ( std::set< std::string >{ "0 0", "0 1" } ) );
    EXPECT_EQ( two.distance, 1u );
    ASSERT_EQ( two.per_model_distance.size(), 2u );
    for ( const auto& [ model, d ] : two.per_model_distance )
        EXPECT_EQ( d, two.distance );

    auto x = rows( space, { "0 1", "1 1" } );
    auto overlap = revise( x, parse_formula( "q" ) );
    EXPECT_EQ( overlap.distance, 0u );
    EXPECT_EQ( overlap.revised, x );
}

TEST( Revise, UndefinedCases )
{
    auto space = ProductSpace::boolean( { "p", "q" } );
    auto kind = [ & ]( const ModelSet& x, const Formula& f ) {
        try
        {
            revise( x, f );
        }
        catch ( const Error& e )
        {
            return e.kind();
        }
        return ErrorKind::argument;
    };
    EXPECT_EQ( kind( ModelSet{ space, space->all(), {} }, parse_formula( "p" ) ), ErrorKind::revision );
    EXPECT_EQ( kind( rows( space, { "1 1" } ), parse_formula( "p & ~p" ) ), ErrorKind::revision );
    EXPECT_EQ( kind( rows( space, { "1 1" } ), parse_formula( "z" ) ), ErrorKind::scope );
}

TEST( Revise, MinimalDistanceMatchesDoubleLoop )
{
    semsplit::testing::Rng rng{ 41 };
    for ( int trial = 0; trial < 300; ++trial )
    {
        auto space = semsplit::testing::random_space( rng, 1, 5, 3 );
        auto x = semsplit::testing::random_nonempty_subset( rng, space, space->all(), 0.3 );
        auto psi = semsplit::testing::random_nonempty_subset( rng, space, space->all(), 0.3 );
        auto outcome = revise( x, psi );

        std::size_t best = SIZE_MAX;
        std::set< std::string > argmin;
        for ( const auto& rho : psi.members() )
        {
            std::size_t d = SIZE_MAX;
            for ( const auto& sigma : x.members() )
                d = std::min( d, hamming_distance( rho, sigma ) );
            if ( d < best )
            {
                best = d;
                argmin.clear();
            }
            if ( d == best )
                argmin.insert( rho.row() );
        }
        EXPECT_EQ( outcome.distance, best );
        EXPECT_EQ( rows_of( outcome.revised ), argmin );
        EXPECT_TRUE( outcome.revised.subset_of( psi ) );
    }
}
