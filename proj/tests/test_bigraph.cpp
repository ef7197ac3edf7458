#include <catch_amalgamated.hpp>

#include "helpers.hpp"

using namespace decomp;
using namespace decomp_test;

namespace
{

bipartite_graph airline_graph( relation const& r )
{
  return build_graph( induced_partition( r, { "F", "D" } ), induced_partition( r, { "F", "P" } ) );
}

} // namespace

TEST_CASE( "airline G(FD x FP) has two components of four edges", "[bigraph]" )
{
  auto const g = airline_graph( load( "airline.txt" ) );
  CHECK( g.left.size() == 4u );
  CHECK( g.right.size() == 4u );
  CHECK( g.edges.size() == 8u );
  auto const comps = connected_components( g );
  REQUIRE( comps.size() == 2u );
  CHECK( comps[0].edges.size() == 4u );
  CHECK( comps[1].edges.size() == 4u );
  CHECK( comps[0].tuples( g ) == std::vector<tuple_id>{ 0, 1, 2, 3 } );
  CHECK( is_uniform( g ) );
  CHECK_FALSE( is_fork( g ) );
}

TEST_CASE( "removing a tuple breaks uniformity", "[bigraph]" )
{
  auto const r = load( "airline.txt" );
  relation cut( r.schema() );
  for ( auto const& t : r.tuples() )
  {
    if ( t.id != 3u )
      cut.add_tuple( t.values, t.id );
  }
  CHECK_FALSE( is_uniform( airline_graph( cut ) ) );
}

TEST_CASE( "parallel edges break uniformity", "[bigraph]" )
{
  partition left( { { 0, 1 } } ), right( { { 0, 1 } } );
  auto const g = build_graph( left, right );
  CHECK( g.edges.size() == 2u );
  CHECK_FALSE( is_uniform( g ) );
  CHECK( is_fork( g ) );
}

TEST_CASE( "fork shape mirrors refinement", "[bigraph]" )
{
  auto const r = load( "disjoint.txt" );
  auto const py = induced_partition( r, { "x1", "x4" } );
  partition pw( { { 0, 2, 4, 6, 9, 11, 13, 15 }, { 1, 3, 5, 7, 8, 10, 12, 14 } } );
  CHECK( is_fork( build_graph( py, pw ) ) );
  CHECK_FALSE( is_fork( build_graph( pw, py ) ) );
}

TEST_CASE( "graphs need a shared universe", "[bigraph]" )
{
  CHECK_THROWS_AS( build_graph( partition( std::vector<partition::block>{ { 0 } } ), partition( std::vector<partition::block>{ { 1 } } ) ), decomp_error );
}

TEST_CASE( "dot rendering", "[bigraph]" )
{
  auto const dot = to_dot( airline_graph( load( "airline.txt" ) ), "airline" );
  CHECK( dot.rfind( "graph airline {\n", 0 ) == 0u );
  CHECK( dot.find( "l0 [label=\"P106,Mon\"];" ) != std::string::npos );
  CHECK( dot.find( "r0 [label=\"Q106,747\"];" ) != std::string::npos );
  CHECK( std::count( dot.begin(), dot.end(), '\n' ) == 2 + 8 + 8 + 1 );
  CHECK( dot.find( "color=red" ) != std::string::npos );
}

TEST_CASE( "complete components alone do not make an MVD", "[bigraph]" )
{
  /* X = {}, R = { (0,0), (1,1) }: two complete components, one X-block */
  partition left( std::vector<partition::block>{ { 0 }, { 1 } } ), right( std::vector<partition::block>{ { 0 }, { 1 } } );
  auto const g = build_graph( left, right );
  CHECK( is_uniform( g ) );
  CHECK_FALSE( is_uniform_over( g, partition( std::vector<partition::block>{ { 0, 1 } } ) ) );
  CHECK( is_uniform_over( g, left ) );
}

TEST_CASE( "airline graph is uniform over pi_F", "[bigraph]" )
{
  auto const r = load( "airline.txt" );
  CHECK( is_uniform_over( airline_graph( r ), induced_partition( r, { "F" } ) ) );
}
