#include <catch_amalgamated.hpp>

#include "helpers.hpp"

using namespace decomp;
using namespace decomp_test;

namespace
{

int nt( int b ) { return 1 - b; }

/* g evaluated through T_g: bound-set values -> W code */
std::map<std::vector<int>, int> g_function( decomposition const& d )
{
  return function_of( d.table_g, d.bound, d.bridge_attrs.front() );
}

void require_verified( decomposition const& d )
{
  CHECK( d.verification.fd_y_w.holds );
  CHECK( d.verification.fd_wz_f.holds );
  CHECK( d.verification.mvd_ok );
  CHECK( d.verification.join_roundtrip );
  CHECK( d.verification.recomposition );
}

std::vector<std::string> final_labels( decomposition const& d )
{
  std::vector<std::string> out;
  for ( auto c = 0u; c < d.final_chart.columns.size(); ++c )
    out.push_back( d.final_chart.column_label( c ) );
  return out;
}

} // namespace

TEST_CASE( "disjoint table: disjoint decomposition", "[decompose]" )
{
  auto const d = fda_alpha( load( "disjoint.txt" ), { "x1", "x4" }, { "x2", "x3" } );
  require_verified( d );
  CHECK( d.k == 2u );
  CHECK( d.bits == 1u );
  CHECK( d.nontrivial );
  CHECK( d.optimal == std::optional<bool>( true ) );
  CHECK( d.bridge_partition.to_string() == "{t0 t2 t4 t6 t9 t11 t13 t15 | t1 t3 t5 t7 t8 t10 t12 t14}" );
  CHECK( d.w_assignment.at( 9 ) == 0u );
  CHECK( d.w_assignment.at( 1 ) == 1u );
  CHECK( d.table_g.size() == 4u );
  CHECK( d.table_h.size() == 8u );
  CHECK( d.table_g.attr( "W" ).role == attr_role::output );
  CHECK( d.table_h.attr( "W" ).role == attr_role::input );
  CHECK( relations_equal( recompose( d ), d.source ) );
}

TEST_CASE( "constant function has a single block", "[decompose]" )
{
  auto const d = fda_alpha( binary_table( 3, []( bits const& ) { return 1; } ), { "x1", "x2" }, { "x3" } );
  require_verified( d );
  CHECK( d.k == 1u );
  CHECK( d.bits == 0u );
  CHECK( d.nontrivial );
  CHECK( d.w_domain.values.size() == 2u );
}

TEST_CASE( "no equivalent columns gives a trivial decomposition", "[decompose]" )
{
  /* F = x1 xor x3 for x2 = 0, x1 and x4 for x2 = 1: rejection-free fixed instance */
  auto const r = binary_table( 4, []( bits const& x ) { return x[1] == 0 ? x[0] ^ x[2] : x[0] & x[3]; } );
  auto const ch = build_chart( r, { "x1", "x2" }, { "x3", "x4" } );
  for ( auto i = 0u; i < 4u; ++i )
  {
    for ( auto j = i + 1u; j < 4u; ++j )
      REQUIRE_FALSE( columns_equivalent( ch, i, j ) );
  }
  auto const d = fda_alpha( r, { "x1", "x2" }, { "x3", "x4" } );
  require_verified( d );
  CHECK( d.k == 4u );
  CHECK_FALSE( d.nontrivial );
}

TEST_CASE( "alpha preconditions", "[decompose]" )
{
  auto const r = load( "disjoint.txt" );
  CHECK_THROWS_AS( fda_alpha( r, { "x1", "x4" }, { "x2", "x3", "x4" } ), decomp_error );
  CHECK_THROWS_AS( fda_alpha( r, { "x1" }, { "x2", "x3" } ), decomp_error );
  CHECK_THROWS_AS( fda_alpha( load( "dont_care.txt" ), { "x1", "x2", "x4" }, { "x3", "x5" } ), decomp_error );
  CHECK_THROWS_AS( fda_gamma( load( "dont_care.txt" ), { "x1", "x2", "x4" }, { "x2", "x3", "x5" } ), decomp_error );
  CHECK_THROWS_AS( fda_delta( r, { "x1", "x4" }, { "x2", "x3", "x4" } ), decomp_error );
}

TEST_CASE( "bridge assignment", "[decompose]" )
{
  auto const r = binary_table( 3, []( bits const& x ) { return x[0]; } );
  std::vector<partition::block> five = { { 0 }, { 1 }, { 2 }, { 3 }, { 4, 5, 6, 7 } };
  auto const w = assign_w( r, partition( five ), "W", encoding::binary_bits );
  CHECK( w.names() == attr_set{ "x1", "x2", "x3", "F", "W2", "W1", "W0" } );
  CHECK( values_of( w, 4, { "W2", "W1", "W0" } ) == std::vector<int>{ 1, 0, 0 } );
  CHECK( values_of( w, 3, { "W2", "W1", "W0" } ) == std::vector<int>{ 0, 1, 1 } );
  CHECK( w.attr( "W0" ).role == attr_role::bridge );

  auto const one = assign_w( r, top_partition( r.ids() ), "W", encoding::single_var );
  for ( auto id : r.ids() )
    CHECK( values_of( one, id, { "W" } ) == std::vector<int>{ 0 } );

  CHECK( bridge_names( "W1", 4, encoding::binary_bits ) == attr_set{ "W1_1", "W1_0" } );
  CHECK( bridge_names( "W", 1, encoding::binary_bits ) == attr_set{ "W0" } );
  CHECK_THROWS_AS( assign_w( r, top_partition( r.ids() ), "x1", encoding::single_var ), decomp_error );
  CHECK_THROWS_AS( assign_w( r, top_partition( { 0, 1 } ), "W", encoding::single_var ), decomp_error );
}

TEST_CASE( "binary encoding decomposes and verifies", "[decompose]" )
{
  decompose_params p;
  p.enc = encoding::binary_bits;
  auto const d = fda_alpha( load( "disjoint.txt" ), { "x1", "x4" }, { "x2", "x3" }, p );
  require_verified( d );
  CHECK( d.bridge_attrs == attr_set{ "W0" } );
  auto const e = fda_delta( load( "multi_valued.txt", missing_rows::extend ), { "x2", "x3" }, { "x1" }, p ).front();
  require_verified( e );
  CHECK( e.bridge_attrs == attr_set{ "W1", "W0" } );
}

TEST_CASE( "two bound sets: multiple decomposition", "[decompose]" )
{
  auto const m = fda_beta( load( "two_bound_sets.txt" ), { { "x1", "x4", "x5" }, { "x2", "x3" } }, {} );
  CHECK( m.verification.all() );
  REQUIRE( m.parts.size() == 2u );
  CHECK( final_labels( m.parts[0] ) == std::vector<std::string>{ "P000∨011∨100", "P001∨010∨101∨110∨111" } );
  CHECK( m.parts[0].bridge_attrs == attr_set{ "W1" } );
  CHECK( m.parts[1].bridge_attrs == attr_set{ "W2" } );
  CHECK( m.parts[1].k == 2u );
  CHECK( m.table_h.size() == 4u );

  auto const single = fda_beta( load( "disjoint.txt" ), { { "x1", "x4" } }, { "x2", "x3" } );
  auto const alpha = fda_alpha( load( "disjoint.txt" ), { "x1", "x4" }, { "x2", "x3" } );
  CHECK( single.parts.front().bridge_partition == alpha.bridge_partition );
  CHECK( single.verification.all() );

  CHECK_THROWS_AS( fda_beta( load( "two_bound_sets.txt" ), { { "x1", "x2" }, { "x2", "x3" } }, { "x4", "x5" } ), decomp_error );
  CHECK_THROWS_AS( fda_beta( load( "two_bound_sets.txt" ), {}, {} ), decomp_error );
}

TEST_CASE( "shared variable: non-disjoint decomposition", "[decompose]" )
{
  auto const r = load( "shared_variable.txt" );
  auto const d = fda_gamma( r, { "x2", "x4", "x5" }, { "x1", "x2", "x3" } );
  require_verified( d );
  CHECK( d.k == 2u );
  CHECK( d.common == attr_set{ "x2" } );
  CHECK( d.optimal == std::optional<bool>( true ) );
  REQUIRE( d.intermediate_chart );
  CHECK( d.intermediate_chart->columns.size() == 4u );
  CHECK( final_labels( d ) == std::vector<std::string>{ "P000∨010∨011∨100∨101", "P001∨110∨111" } );

  auto const all = fda_gamma_enumerate( r, { "x2", "x4", "x5" }, { "x1", "x2", "x3" } );
  REQUIRE( all.size() == 2u );
  CHECK( all.front().bridge_partition == d.bridge_partition );
  CHECK( final_labels( all[1] ) == std::vector<std::string>{ "P000∨010∨011∨110∨111", "P001∨100∨101" } );
  for ( auto const& e : all )
    require_verified( e );

  auto const rec = recompose( d );
  CHECK( values_of( rec, 0, { "x1", "x2", "x3", "x4", "x5", "F" } ).size() == 6u );
  auto const f = function_of( rec, { "x1", "x2", "x3", "x4", "x5" }, "F" );
  CHECK( f.at( { 1, 0, 0, 0, 1 } ) == 1 );

  /* g of the first reference partition is x2'x5' + x4 up to relabeling */
  auto const g = g_function( all[1] );
  auto const w_of_one = g.at( { 0, 0, 0 } );
  for ( auto const& [y, w] : g )
    CHECK( ( w == w_of_one ) == static_cast<bool>( ( nt( y[0] ) & nt( y[2] ) ) | y[1] ) );
}

TEST_CASE( "gamma on disjoint sets runs the disjoint procedure", "[decompose]" )
{
  auto const d = fda_gamma( load( "disjoint.txt" ), { "x1", "x4" }, { "x2", "x3" } );
  CHECK( d.algorithm == "alpha" );
  REQUIRE( d.notes.size() == 1u );
  CHECK( fda_gamma_enumerate( load( "disjoint.txt" ), { "x1", "x4" }, { "x2", "x3" } ).size() == 1u );
}

TEST_CASE( "don't-care table: incompletely specified decomposition", "[decompose]" )
{
  auto const r = load( "dont_care.txt" );
  decompose_params p;
  p.mcp = mcp_mode::enumerate;
  auto const all = fda_delta( r, { "x1", "x2", "x4" }, { "x3", "x5" }, p );
  REQUIRE( all.size() == 2u );
  for ( auto const& d : all )
  {
    require_verified( d );
    CHECK( d.k == 2u );
  }
  auto const exact = fda_delta( r, { "x1", "x2", "x4" }, { "x3", "x5" } );
  REQUIRE( exact.size() == 1u );
  CHECK( exact.front().bridge_partition == all.front().bridge_partition );
  CHECK( final_labels( exact.front() ) == std::vector<std::string>{ "P000∨001∨011∨111", "P100∨101∨110" } );

  p.mcp = mcp_mode::greedy;
  CHECK( fda_delta( r, { "x1", "x2", "x4" }, { "x3", "x5" }, p ).front().k == 2u );
}

TEST_CASE( "residual don't-cares stay unspecified and any completion recomposes", "[decompose]" )
{
  auto const r = load( "dont_care.txt" );
  decompose_params p;
  p.mcp = mcp_mode::enumerate;
  for ( auto const& d : fda_delta( r, { "x1", "x2", "x4" }, { "x3", "x5" }, p ) )
  {
    auto const f = d.table_h.attr_index( "F" );
    std::vector<std::size_t> open;
    for ( auto i = 0u; i < d.table_h.size(); ++i )
    {
      if ( d.table_h.tuples()[i].values[f] == dont_care )
        open.push_back( i );
    }
    for ( auto mask = 0u; mask < ( 1u << open.size() ); ++mask )
    {
      relation h( d.table_h.schema() );
      for ( auto i = 0u; i < d.table_h.size(); ++i )
      {
        auto t = d.table_h.tuples()[i];
        auto const pos = std::find( open.begin(), open.end(), i );
        if ( pos != open.end() )
          t.values[f] = static_cast<int>( ( mask >> ( pos - open.begin() ) ) & 1u );
        h.add_tuple( t.values, t.id );
      }
      auto const rec = project( natural_join( d.table_g, h ), r.names() );
      auto const got = function_of( rec, r.inputs(), "F" );
      for ( auto const& t : r.tuples() )
      {
        auto const want = t.values[r.attr_index( "F" )];
        if ( want != dont_care )
          CHECK( got.at( values_of( r, t.id, r.inputs() ) ) == want );
      }
    }
  }
}

TEST_CASE( "delta on a fully specified table equals alpha", "[decompose]" )
{
  auto const r = load( "disjoint.txt" );
  auto const d = fda_delta( r, { "x1", "x4" }, { "x2", "x3" } );
  REQUIRE( d.size() == 1u );
  CHECK( d.front().bridge_partition == fda_alpha( r, { "x1", "x4" }, { "x2", "x3" } ).bridge_partition );
  decompose_params p;
  p.mcp = mcp_mode::enumerate;
  CHECK( fda_delta( r, { "x1", "x4" }, { "x2", "x3" }, p ).size() == 1u );
}

TEST_CASE( "multi-valued table: multi-valued decomposition", "[decompose]" )
{
  auto const r = load( "multi_valued.txt", missing_rows::extend );
  CHECK( r.size() == 18u );
  auto const all = fda_delta( r, { "x2", "x3" }, { "x1" } );
  REQUIRE( all.size() == 1u );
  auto const& d = all.front();
  require_verified( d );
  CHECK( d.k == 3u );
  CHECK( d.w_domain.values == std::vector<std::string>{ "0", "1", "2" } );
  CHECK( final_labels( d ) == std::vector<std::string>{ "Plo,lo∨lo,hi∨med,lo∨hi,lo", "Pmed,hi", "Phi,hi" } );
  CHECK( d.nontrivial );
}

TEST_CASE( "all-unspecified table is degenerate but verified", "[decompose]" )
{
  auto const r = binary_table( 2, []( bits const& ) { return -1; } );
  auto const all = fda_delta( r, { "x1" }, { "x2" } );
  REQUIRE( all.size() == 1u );
  CHECK( all.front().k == 1u );
  CHECK( all.front().verification.all() );
  CHECK( all.front().notes.size() == 1u );
}

TEST_CASE( "shuffled merges give the same bridge partition", "[decompose][property]" )
{
  std::mt19937 rng( 23u );
  auto const r = load( "two_bound_sets.txt" );
  auto const base = fda_alpha( r, { "x1", "x4", "x5" }, { "x2", "x3" } ).bridge_partition;
  for ( auto i = 0; i < 10; ++i )
  {
    decompose_params p;
    p.shuffle = &rng;
    CHECK( fda_alpha( r, { "x1", "x4", "x5" }, { "x2", "x3" }, p ).bridge_partition == base );
  }
}
