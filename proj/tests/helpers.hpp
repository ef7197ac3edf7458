/*!
  \file helpers.hpp
  \brief Fixtures and brute-force oracles shared by the test suites

  The oracles work on plain value vectors and never call the library's
  partition, graph or chart code.
*/

#pragma once

#include <algorithm>
#include <fstream>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <decomp/decomp.hpp>

namespace decomp_test
{

using namespace decomp;

using bits = std::vector<int>;

/*! \brief Complete binary truth table x1..xn -> F; `fn` returns 0, 1 or -1 for `-`. */
inline relation binary_table( unsigned n, std::function<int( bits const& )> const& fn, std::string const& out = "F" )
{
  std::vector<attribute> schema;
  for ( auto i = 1u; i <= n; ++i )
    schema.push_back( { binary_domain( "x" + std::to_string( i ) ), attr_role::input } );
  schema.push_back( { binary_domain( out ), attr_role::output } );
  relation r( schema );
  for ( auto m = 0u; m < ( 1u << n ); ++m )
  {
    bits x( n );
    for ( auto i = 0u; i < n; ++i )
      x[i] = static_cast<int>( ( m >> ( n - 1u - i ) ) & 1u );
    auto row = x;
    row.push_back( fn( x ) );
    r.add_tuple( row, m );
  }
  return r;
}

inline std::string read_file( std::string const& path )
{
  std::ifstream in( path, std::ios::binary );
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline std::string data_path( std::string const& name ) { return std::string( DECOMP_TEST_DATA ) + "/" + name; }

inline relation load( std::string const& name, missing_rows mode = missing_rows::reject )
{
  return parse_table( read_file( data_path( name ) ), mode );
}

/*! \brief Value vector of tuple `id` restricted to `attrs`. */
inline std::vector<int> values_of( relation const& r, tuple_id id, attr_set const& attrs )
{
  std::vector<int> out;
  for ( auto const& a : attrs )
    out.push_back( r.by_id( id ).values[r.attr_index( a )] );
  return out;
}

/*! \brief Input vector -> output value, for function-level comparisons. */
inline std::map<std::vector<int>, int> function_of( relation const& r, attr_set const& inputs, std::string const& output )
{
  std::map<std::vector<int>, int> f;
  for ( auto const& t : r.tuples() )
    f[values_of( r, t.id, inputs )] = t.values[r.attr_index( output )];
  return f;
}

/*! \brief Set partitions of { 0 .. n-1 } as restricted growth strings. */
inline std::vector<std::vector<std::size_t>> all_set_partitions( std::size_t n )
{
  std::vector<std::vector<std::size_t>> out;
  std::vector<std::size_t> a( n, 0u );
  std::function<void( std::size_t, std::size_t )> rec = [&]( std::size_t i, std::size_t m ) {
    if ( i == n )
    {
      out.push_back( a );
      return;
    }
    for ( std::size_t b = 0u; b <= m; ++b )
    {
      a[i] = b;
      rec( i + 1u, b == m ? m + 1u : m );
    }
  };
  rec( 0u, 0u );
  return out;
}

/* Definitional FD on raw rows, skipping rows with -1 in `y`. */
inline bool oracle_fd( relation const& r, attr_set const& x, attr_set const& y )
{
  std::map<std::vector<int>, std::vector<int>> seen;
  for ( auto const& t : r.tuples() )
  {
    auto const yv = values_of( r, t.id, y );
    if ( std::find( yv.begin(), yv.end(), -1 ) != yv.end() )
      continue;
    auto [it, fresh] = seen.emplace( values_of( r, t.id, x ), yv );
    if ( !fresh && it->second != yv )
      return false;
  }
  return true;
}

/* MVD as a product test: for every X-value the (Y, Z) pairs form a full product. */
inline bool oracle_mvd( relation const& r, attr_set const& x, attr_set const& y )
{
  attr_set z;
  for ( auto const& n : r.names() )
  {
    if ( std::find( x.begin(), x.end(), n ) == x.end() && std::find( y.begin(), y.end(), n ) == y.end() )
      z.push_back( n );
  }
  std::map<std::vector<int>, std::set<std::pair<std::vector<int>, std::vector<int>>>> pairs;
  for ( auto const& t : r.tuples() )
  {
    if ( std::find( t.values.begin(), t.values.end(), -1 ) != t.values.end() )
      continue;
    pairs[values_of( r, t.id, x )].insert( { values_of( r, t.id, y ), values_of( r, t.id, z ) } );
  }
  for ( auto const& [xv, ps] : pairs )
  {
    std::set<std::vector<int>> ys, zs;
    for ( auto const& [a, b] : ps )
    {
      ys.insert( a );
      zs.insert( b );
    }
    if ( ps.size() != ys.size() * zs.size() )
      return false;
  }
  return true;
}

/* Random relation over binary/ternary domains with distinct rows. */
inline relation random_relation( std::mt19937& rng, std::size_t max_attrs = 5u, std::size_t max_tuples = 48u )
{
  auto const n = std::uniform_int_distribution<std::size_t>( 1u, max_attrs )( rng );
  std::vector<attribute> schema;
  std::size_t space = 1u;
  for ( auto i = 0u; i < n; ++i )
  {
    auto const card = std::uniform_int_distribution<int>( 2, 3 )( rng );
    domain d{ "a" + std::to_string( i ), {} };
    for ( auto v = 0; v < card; ++v )
      d.values.push_back( std::to_string( v ) );
    space *= static_cast<std::size_t>( card );
    schema.push_back( { d, attr_role::input } );
  }
  relation r( schema );
  auto const m = std::uniform_int_distribution<std::size_t>( 1u, std::min( max_tuples, space ) )( rng );
  std::set<std::vector<int>> rows;
  while ( rows.size() < m )
  {
    std::vector<int> row;
    for ( auto const& a : schema )
      row.push_back( std::uniform_int_distribution<int>( 0, static_cast<int>( a.dom.size() ) - 1 )( rng ) );
    rows.insert( row );
  }
  tuple_id id = 0;
  for ( auto const& row : rows )
    r.add_tuple( row, id++ );
  return r;
}

/* Random nonempty subset of the names, as an ordered list. */
inline attr_set random_subset( std::mt19937& rng, attr_set const& names, bool allow_empty = false )
{
  for ( ;; )
  {
    attr_set s;
    for ( auto const& n : names )
    {
      if ( rng() & 1u )
        s.push_back( n );
    }
    if ( allow_empty || !s.empty() )
      return s;
  }
}

inline compat_graph random_graph( std::mt19937& rng, std::size_t n, double density )
{
  auto g = compat_graph::empty( n );
  std::bernoulli_distribution coin( density );
  for ( auto i = 0u; i < n; ++i )
  {
    for ( auto j = i + 1u; j < n; ++j )
    {
      if ( coin( rng ) )
        g.connect( i, j );
    }
  }
  return g;
}

/* Brute force: minimum number of cliques and how many set partitions achieve it. */
inline std::pair<std::size_t, std::size_t> brute_force_mcp( compat_graph const& g )
{
  std::size_t best = g.size() + 1u, count = 0u;
  for ( auto const& rgs : all_set_partitions( g.size() ) )
  {
    bool ok = true;
    for ( auto i = 0u; i < g.size() && ok; ++i )
    {
      for ( auto j = i + 1u; j < g.size() && ok; ++j )
        ok = rgs[i] != rgs[j] || g.adjacent( i, j );
    }
    if ( !ok )
      continue;
    auto const k = g.size() == 0u ? 0u : *std::max_element( rgs.begin(), rgs.end() ) + 1u;
    if ( k < best )
    {
      best = k;
      count = 1u;
    }
    else if ( k == best )
    {
      ++count;
    }
  }
  return { best, count };
}

inline partition random_partition( std::mt19937& rng, std::vector<tuple_id> const& universe )
{
  auto const k = std::uniform_int_distribution<std::size_t>( 1u, universe.size() )( rng );
  std::map<std::size_t, partition::block> blocks;
  for ( auto id : universe )
    blocks[std::uniform_int_distribution<std::size_t>( 0u, k - 1u )( rng )].push_back( id );
  std::vector<partition::block> bs;
  for ( auto& [i, b] : blocks )
    bs.push_back( b );
  return partition( bs );
}

/* Partition of the universe by a label per id, computed without the library's lattice code. */
inline partition partition_by_key( std::vector<tuple_id> const& ids, std::function<std::vector<int>( tuple_id )> const& key )
{
  std::map<std::vector<int>, partition::block> groups;
  for ( auto id : ids )
    groups[key( id )].push_back( id );
  std::vector<partition::block> bs;
  for ( auto& [k, b] : groups )
    bs.push_back( b );
  return partition( bs );
}

} // namespace decomp_test
