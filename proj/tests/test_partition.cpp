#include "support/generators.hpp"

#include <gtest/gtest.h>

using namespace semsplit;
using semsplit::testing::partition;

class PartitionTest : public ::testing::Test
{
protected:
    SpacePtr space = ProductSpace::boolean( { "p", "q", "r" } );

    std::string text( const Partition& p ) const { return format_partition( *space, p ); }
};

TEST_F( PartitionTest, ParseAndFormat )
{
    EXPECT_EQ( text( partition( space, " r | q , p " ) ), "p,q|r" );
    EXPECT_EQ( text( partition( space, "p|q|r" ) ), "p|q|r" );
    EXPECT_THROW( partition( space, "p,q|x" ), ParseError );
    EXPECT_THROW( partition( space, "p,|r" ), ParseError );
    EXPECT_THROW( partition( space, "p q|r" ), ParseError );
    try
    {
        partition( space, "p,q|q,r" );
        FAIL();
    }
    catch ( const Error& e )
    {
        EXPECT_EQ( e.kind(), ErrorKind::partition );
    }
}

TEST_F( PartitionTest, Restrict )
{
    auto pq_r = partition( space, "p,q|r" );
    EXPECT_EQ( text( restrict_partition( pq_r, space->coords( { "q", "r" } ) ) ), "q|r" );
    EXPECT_EQ( restrict_partition( pq_r, pq_r.scope() ), pq_r );
    EXPECT_EQ( text( restrict_partition( pq_r, space->coords( { "p", "q" } ) ) ), "p,q" );
}

TEST_F( PartitionTest, Refinement )
{
    EXPECT_TRUE( is_refinement( partition( space, "p|q|r" ), partition( space, "p,q|r" ) ) );
    EXPECT_FALSE( is_refinement( partition( space, "p,q|r" ), partition( space, "p|q,r" ) ) );
    auto a = partition( space, "p,r|q" );
    EXPECT_TRUE( is_refinement( a, a ) );
    EXPECT_THROW( is_refinement( a, partition( space, "p|q" ) ), Error );
}

TEST_F( PartitionTest, Meet )
{
    EXPECT_EQ( text( meet( partition( space, "p,q|r" ), partition( space, "p|q,r" ) ) ), "p|q|r" );
    auto a = partition( space, "p,r|q" );
    EXPECT_EQ( meet( a, Partition::top( space->all() ) ), a );
    EXPECT_EQ( meet( a, a ), a );
}

TEST_F( PartitionTest, MeetMany )
{
    std::vector< Partition > family{ partition( space, "p|q,r" ), partition( space, "p,q|r" ), partition( space, "p,r|q" ) };
    EXPECT_EQ( text( meet_many( family ) ), "p|q|r" );
    auto a = partition( space, "p,r|q" );
    EXPECT_EQ( meet_many( std::vector{ a } ), a );
    auto top = partition( space, "p,q,r" );
    EXPECT_EQ( meet_many( std::vector{ top, top } ), top );
    EXPECT_THROW( meet_many( std::vector< Partition >{} ), Error );
}

TEST( AllPartitions, BellNumbers )
{
    const std::size_t bell[] = { 1, 1, 2, 5, 15, 52 };
    for ( std::size_t n = 0; n <= 5; ++n )
    {
        auto all = all_partitions( CoordSet::first( n ) );
        EXPECT_EQ( all.size(), bell[ n ] );
        std::set< std::vector< std::uint64_t > > distinct;
        for ( const auto& p : all )
        {
            std::vector< std::uint64_t > key;
            for ( auto b : p.blocks() )
                key.push_back( b.bits() );
            distinct.insert( key );
        }
        EXPECT_EQ( distinct.size(), bell[ n ] );
    }
}

TEST( PartitionProperties, MeetLaws )
{
    semsplit::testing::Rng rng{ 11 };
    for ( int trial = 0; trial < 500; ++trial )
    {
        auto scope = CoordSet::first( semsplit::testing::uniform( rng, 1, 7 ) );
        auto a = semsplit::testing::random_partition( rng, scope );
        auto b = semsplit::testing::random_partition( rng, scope );
        auto c = semsplit::testing::random_partition( rng, scope );

        auto ab = meet( a, b );
        EXPECT_EQ( ab, meet( b, a ) );
        EXPECT_EQ( meet( ab, c ), meet( a, meet( b, c ) ) );
        EXPECT_EQ( meet( a, a ), a );
        EXPECT_TRUE( is_refinement( ab, a ) );
        EXPECT_TRUE( is_refinement( ab, b ) );
        if ( is_refinement( c, a ) && is_refinement( c, b ) )
        {
            EXPECT_TRUE( is_refinement( c, ab ) );
        }
        // a refinement of both always exists among meets with c
        auto cab = meet( c, ab );
        EXPECT_TRUE( is_refinement( cab, ab ) );

        std::vector< Partition > forward{ a, b, c };
        std::vector< Partition > backward{ c, b, a };
        EXPECT_EQ( meet_many( forward ), meet_many( backward ) );

        auto u = CoordSet::from_bits( rng() ) & scope;
        EXPECT_EQ( restrict_partition( ab, u ), meet( restrict_partition( a, u ), restrict_partition( b, u ) ) );
    }
}
