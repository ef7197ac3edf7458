/*!
  \file bigraph.hpp
  \brief Bipartite graph of two partitions and its fork / uniform predicates

  Nodes are the blocks of two partitions of one universe; every element of
  the universe contributes one edge joining the two blocks that contain it.
  Parallel edges are kept because uniformity counts multiplicity.
*/

#pragma once

#include <algorithm>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "partition.hpp"

namespace decomp
{

struct bipartite_graph
{
  struct edge
  {
    std::size_t left;
    std::size_t right;
    tuple_id tuple;
  };

  partition left;
  partition right;
  std::vector<edge> edges;
};

struct component
{
  std::vector<std::size_t> left;
  std::vector<std::size_t> right;
  std::vector<std::size_t> edges;

  std::vector<tuple_id> tuples( bipartite_graph const& g ) const
  {
    std::vector<tuple_id> ids;
    for ( auto e : edges )
      ids.push_back( g.edges[e].tuple );
    std::sort( ids.begin(), ids.end() );
    return ids;
  }
};

using component_set = std::vector<component>;

/*! \brief G(π₁ × π₂, S) with edges in universe order. */
inline bipartite_graph build_graph( partition const& p1, partition const& p2 )
{
  detail::require_same_universe( p1, p2 );
  bipartite_graph g{ p1, p2, {} };
  for ( auto id : p1.universe() )
    g.edges.push_back( { p1.block_of( id ), p2.block_of( id ), id } );
  return g;
}

/*! \brief Connected components, ordered by their smallest tuple id. */
inline component_set connected_components( bipartite_graph const& g )
{
  auto const nl = g.left.size();
  detail::union_find uf( nl + g.right.size() );
  for ( auto const& e : g.edges )
    uf.unite( e.left, nl + e.right );

  std::map<std::size_t, component> by_root;
  for ( auto i = 0u; i < g.edges.size(); ++i )
    by_root[uf.find( g.edges[i].left )].edges.push_back( i );

  component_set out;
  for ( auto& [root, c] : by_root )
  {
    std::set<std::size_t> l, r;
    for ( auto e : c.edges )
    {
      l.insert( g.edges[e].left );
      r.insert( g.edges[e].right );
    }
    c.left.assign( l.begin(), l.end() );
    c.right.assign( r.begin(), r.end() );
    out.push_back( std::move( c ) );
  }
  std::sort( out.begin(), out.end(), [&]( auto const& a, auto const& b ) {
    auto const ta = a.tuples( g ), tb = b.tuples( g );
    return ta.front() < tb.front();
  } );
  return out;
}

/*! \brief Every left block sends all of its edges to a single right block.

  Read as a forest, the right blocks are the roots; this is the graph
  signature of the left partition refining the right one.
*/
inline bool is_fork( bipartite_graph const& g )
{
  std::vector<std::size_t> root( g.left.size(), g.right.size() );
  for ( auto const& e : g.edges )
  {
    if ( root[e.left] == g.right.size() )
      root[e.left] = e.right;
    else if ( root[e.left] != e.right )
      return false;
  }
  return true;
}

/*! \brief Every component is complete bipartite with exactly one edge per block pair. */
inline bool is_uniform( bipartite_graph const& g )
{
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> multiplicity;
  for ( auto const& e : g.edges )
    ++multiplicity[{ e.left, e.right }];
  for ( auto const& c : connected_components( g ) )
  {
    for ( auto l : c.left )
    {
      for ( auto r : c.right )
      {
        auto it = multiplicity.find( { l, r } );
        if ( it == multiplicity.end() || it->second != 1u )
          return false;
      }
    }
  }
  return true;
}

/*! \brief Graph test for X ↠ Y on G(π_XY × π_XZ).

  Every component must be complete bipartite with simple edges, and the
  tuple sets of the components must be exactly the blocks of `px`.
*/
inline bool is_uniform_over( bipartite_graph const& g, partition const& px )
{
  if ( !is_uniform( g ) )
    return false;
  std::vector<partition::block> blocks;
  for ( auto const& c : connected_components( g ) )
    blocks.push_back( c.tuples( g ) );
  return partition( std::move( blocks ) ) == px;
}

/*! \brief Graphviz rendering; one color per connected component. */
inline std::string to_dot( bipartite_graph const& g, std::string const& name = "G" )
{
  static char const* palette[] = { "black", "red", "blue", "darkgreen", "orange", "purple", "brown", "gray" };
  auto const comps = connected_components( g );
  std::vector<std::size_t> color( g.edges.size(), 0u );
  for ( auto c = 0u; c < comps.size(); ++c )
  {
    for ( auto e : comps[c].edges )
      color[e] = c % 8u;
  }
  auto const label = []( partition const& p, std::size_t i, char prefix ) {
    return p.has_labels() ? std::string( 1, prefix ) + p.labels()[i] : std::string( 1, prefix ) + std::to_string( i );
  };

  std::ostringstream os;
  os << "graph " << name << " {\n  rankdir=LR;\n";
  for ( auto i = 0u; i < g.left.size(); ++i )
    os << "  l" << i << " [label=\"" << label( g.left, i, 'P' ) << "\"];\n";
  for ( auto i = 0u; i < g.right.size(); ++i )
    os << "  r" << i << " [label=\"" << label( g.right, i, 'Q' ) << "\"];\n";
  for ( auto i = 0u; i < g.edges.size(); ++i )
  {
    auto const& e = g.edges[i];
    os << "  l" << e.left << " -- r" << e.right << " [label=\"t" << e.tuple << "\", color=" << palette[color[i]]
       << "];\n";
  }
  os << "}\n";
  return os.str();
}

} // namespace decomp
