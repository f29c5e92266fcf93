#include "support/generators.hpp"

#include <gtest/gtest.h>

using namespace semsplit;
using semsplit::testing::brute_is_factorization;
using semsplit::testing::partition;
using semsplit::testing::rows;
using semsplit::testing::rows_of;

namespace
{

std::string text( const SpacePtr& space, const Partition& p ) { return format_partition( *space, p ); }

} // namespace

TEST( IsFactorization, SameColorAndShapeCannotBeFactorized )
{
    auto space = ProductSpace::boolean( { "p", "q" } );
    auto x = rows( space, { "1 1", "0 0" } );
    auto report = is_factorization( x, partition( space, "p|q" ) );
    EXPECT_FALSE( report.holds );
    ASSERT_TRUE( report.witness );
    // first recombination missing from x, in lexicographic order 00,01,10,11
    EXPECT_EQ( report.witness->to_string(), "{p=0, q=1}" );
    EXPECT_FALSE( x.contains( *report.witness ) );
}

TEST( IsFactorization, RecodedSituationFactorizes )
{
    auto space = ProductSpace::boolean( { "p", "q'" } );
    auto x = rows( space, { "1 1", "0 1" } );
    auto report = is_factorization( x, partition( space, "p|q'" ) );
    EXPECT_TRUE( report.holds );
    EXPECT_FALSE( report.witness );
}

TEST( IsFactorization, SingleBlockAlwaysHolds )
{
    semsplit::testing::Rng rng{ 3 };
    for ( int i = 0; i < 50; ++i )
    {
        auto space = semsplit::testing::random_space( rng, 1, 4, 3 );
        auto x = semsplit::testing::random_subset( rng, space, space->all() );
        EXPECT_TRUE( is_factorization( x, Partition::top( space->all() ) ).holds );
    }
}

TEST( IsFactorization, EmptySetHoldsForEveryPartition )
{
    auto space = ProductSpace::boolean( { "p", "q", "r" } );
    ModelSet empty{ space, space->all(), {} };
    for ( const auto& p : all_partitions( space->all() ) )
        EXPECT_TRUE( is_factorization( empty, p ).holds );
    EXPECT_EQ( text( space, finest_factorization( empty ) ), "p|q|r" );
}

TEST( IsFactorization, ScopeMismatch )
{
    auto space = ProductSpace::boolean( { "p", "q", "r" } );
    auto x = rows( space, { "1 1 1" } );
    EXPECT_THROW( is_factorization( x, partition( space, "p|q" ) ), Error );
}

TEST( IsFactorization, WitnessIsFirstViolatingRecombination )
{
    semsplit::testing::Rng rng{ 5 };
    for ( int trial = 0; trial < 400; ++trial )
    {
        auto space = semsplit::testing::random_space( rng, 1, 4, 3 );
        auto x = semsplit::testing::random_nonempty_subset( rng, space, space->all() );
        auto p = semsplit::testing::random_partition( rng, space->all() );
        auto report = is_factorization( x, p );
        ASSERT_EQ( report.holds, brute_is_factorization( x, p ) );
        ASSERT_EQ( report.holds, !report.witness.has_value() );

        auto join = compose_join( space, block_projections( x, p ) );
        if ( report.holds )
            continue;
        // lexicographically first element of join - x
        std::optional< Code > first;
        for ( auto c : join.codes() )
            if ( !x.contains( c ) )
            {
                first = c;
                break;
            }
        ASSERT_TRUE( first );
        EXPECT_EQ( report.witness->code(), *first );
        for ( auto b : p.blocks() )
            EXPECT_TRUE( project_model_set( x, b ).contains( restrict_assignment( *report.witness, b ) ) );
    }
}

TEST( ComposeJoin, Examples )
{
    auto space = ProductSpace::boolean( { "p", "q" } );
    auto p = rows( ProductSpace::boolean( { "p" } ), { "0", "1" } );
    std::vector< ModelSet > factors{ ModelSet{ space, space->coords( { "p" } ), { 0, 1 } },
                                     ModelSet{ space, space->coords( { "q" } ), { 1 } } };
    auto joined = compose_join( space, factors );
    EXPECT_EQ( rows_of( joined ), ( std::set< std::string >{ "0 1", "1 1" } ) );
    EXPECT_EQ( joined.size(), 2u );

    auto x = rows( space, { "1 1", "0 0" } );
    auto all = compose_join( space, block_projections( x, partition( space, "p|q" ) ) );
    EXPECT_EQ( all.size(), 4u );
    EXPECT_TRUE( x.subset_of( all ) );
    EXPECT_NE( x, all );

    auto s3 = ProductSpace::boolean( { "p", "q'", "r'" } );
    std::vector< ModelSet > three{ ModelSet{ s3, s3->coords( { "p" } ), { 0, 1 } },
                                   ModelSet{ s3, s3->coords( { "q'" } ), { 1 } },
                                   ModelSet{ s3, s3->coords( { "r'" } ), { 1 } } };
    EXPECT_EQ( rows_of( compose_join( s3, three ) ), ( std::set< std::string >{ "0 1 1", "1 1 1" } ) );
}

TEST( ComposeJoin, RejectsOverlapAndGaps )
{
    auto space = ProductSpace::boolean( { "p", "q" } );
    std::vector< ModelSet > overlapping{ ModelSet{ space, space->coords( { "p" } ), { 0 } },
                                         ModelSet{ space, space->coords( { "p", "q" } ), { 0 } } };
    try
    {
        compose_join( space, overlapping );
        FAIL();
    }
    catch ( const Error& e )
    {
        EXPECT_EQ( e.kind(), ErrorKind::partition );
    }
    std::vector< ModelSet > partial{ ModelSet{ space, space->coords( { "p" } ), { 0 } } };
    EXPECT_THROW( compose_join( space, space->all(), partial ), Error );
}

TEST( CylinderExtend, Examples )
{
    auto space = ProductSpace::make( { { "p", { "0", "1" } }, { "q", { "0", "1" } }, { "r", { "a", "b", "c" } } } );
    ModelSet p1{ space, space->coords( { "p" } ), { 1 } };
    auto ext = cylinder_extend( p1, space->coords( { "q" } ) );
    EXPECT_EQ( rows_of( ext ), ( std::set< std::string >{ "1 0", "1 1" } ) );

    ModelSet empty{ space, space->coords( { "p" } ), {} };
    EXPECT_TRUE( cylinder_extend( empty, space->coords( { "q", "r" } ) ).empty() );

    ModelSet pq{ space, space->coords( { "p", "q" } ), { 3 } };
    auto with_r = cylinder_extend( pq, space->coords( { "r" } ) );
    EXPECT_EQ( rows_of( with_r ), ( std::set< std::string >{ "1 1 a", "1 1 b", "1 1 c" } ) );

    try
    {
        cylinder_extend( pq, space->coords( { "q", "r" } ) );
        FAIL();
    }
    catch ( const Error& e )
    {
        EXPECT_EQ( e.kind(), ErrorKind::argument );
    }
}

TEST( Bipartitions, Examples )
{
    auto space = ProductSpace::boolean( { "p", "q" } );
    EXPECT_TRUE( factorization_bipartitions( rows( space, { "1 1", "0 0" } ) ).empty() );

    auto primed = ProductSpace::boolean( { "p", "q'" } );
    auto sides = factorization_bipartitions( rows( primed, { "1 1", "0 1" } ) );
    ASSERT_EQ( sides.size(), 1u );
    EXPECT_EQ( sides[ 0 ], primed->coords( { "p" } ) );
}

TEST( Bipartitions, XorTripleHasNone )
{
    auto space = ProductSpace::boolean( { "p", "q", "r" } );
    auto xor3 = rows( space, { "0 0 0", "0 1 1", "1 0 1", "1 1 0" } );
    // oracle: each of the three bipartitions checked at the definition level
    for ( auto text : { "p|q,r", "p,q|r", "p,r|q" } )
        EXPECT_FALSE( brute_is_factorization( xor3, partition( space, text ) ) ) << text;
    EXPECT_TRUE( factorization_bipartitions( xor3 ).empty() );
}

TEST( Finest, Examples )
{
    auto space = ProductSpace::boolean( { "p", "q" } );
    EXPECT_EQ( text( space, finest_factorization( ModelSet::full( space, space->all() ) ) ), "p|q" );
    EXPECT_EQ( text( space, finest_factorization( rows( space, { "1 1", "0 0" } ) ) ), "p,q" );

    auto s3 = ProductSpace::boolean( { "p", "q", "r" } );
    auto xor3 = rows( s3, { "0 0 0", "0 1 1", "1 0 1", "1 1 0" } );
    // oracle over all 5 partitions of a 3-set
    EXPECT_EQ( text( s3, oracle_finest( xor3 ) ), "p,q,r" );
    EXPECT_EQ( text( s3, finest_factorization( xor3 ) ), "p,q,r" );

    EXPECT_THROW( finest_factorization( ModelSet{ space, CoordSet{}, { 0 } } ), Error );
}

TEST( OracleFinest, Examples )
{
    auto primed = ProductSpace::boolean( { "p", "q'" } );
    EXPECT_EQ( text( primed, oracle_finest( rows( primed, { "1 1", "0 1" } ) ) ), "p|q'" );

    auto s3 = ProductSpace::boolean( { "p", "q", "r" } );
    auto cylinder = cylinder_extend( ModelSet{ s3, s3->coords( { "p" } ), { 1 } }, s3->coords( { "q", "r" } ) );
    EXPECT_EQ( text( s3, oracle_finest( cylinder ) ), "p|q|r" );

    auto space = ProductSpace::boolean( { "p", "q" } );
    EXPECT_EQ( text( space, oracle_finest( rows( space, { "1 1", "1 0", "0 0" } ) ) ), "p,q" );
}

TEST( OracleFinest, BoundIsAResourceError )
{
    auto space = semsplit::testing::boolean_space( 6 );
    auto x = ModelSet::full( space, space->all() );
    try
    {
        oracle_finest( x );
        FAIL();
    }
    catch ( const Error& e )
    {
        EXPECT_TRUE( e.is_resource() );
    }
    EXPECT_EQ( oracle_finest( x, 6 ), Partition::singletons( space->all() ) );
}

TEST( Finest, RefinesEverySampledFactorization )
{
    semsplit::testing::Rng rng{ 17 };
    for ( int trial = 0; trial < 300; ++trial )
    {
        auto space = semsplit::testing::random_space( rng, 1, 5, 3 );
        auto planted_by = semsplit::testing::random_partition( rng, space->all() );
        auto x = semsplit::testing::planted( rng, space, planted_by );
        auto finest = finest_factorization( x );
        EXPECT_TRUE( is_factorization( x, finest ).holds );
        EXPECT_TRUE( is_refinement( finest, planted_by ) );
        for ( const auto& p : all_partitions( space->all() ) )
            if ( is_factorization( x, p ).holds )
            {
                EXPECT_TRUE( is_refinement( finest, p ) );
            }
    }
}
