/*!
  \file cliquecover.hpp
  \brief Compatible graphs of chart columns and minimum clique partitions

  A clique partition of the compatible graph is a proper coloring of its
  complement. The exact search assigns nodes in index order, trying
  existing cliques before opening a new one. That order visits partitions
  by their restricted-growth string (the clique number of each node,
  cliques numbered by first appearance), so the first optimum found is
  the canonical one and enumeration comes out in canonical order.
*/

#pragma once

#include <algorithm>
#include <cstdint>
#include <string>
#include <vector>

#include "chart.hpp"

namespace decomp
{

struct compat_graph
{
  std::vector<std::vector<bool>> adjacency;

  std::size_t size() const { return adjacency.size(); }
  bool adjacent( std::size_t i, std::size_t j ) const { return i != j && adjacency[i][j]; }

  static compat_graph empty( std::size_t n ) { return { std::vector<std::vector<bool>>( n, std::vector<bool>( n, false ) ) }; }

  void connect( std::size_t i, std::size_t j )
  {
    if ( i == j )
      return;
    adjacency[i][j] = adjacency[j][i] = true;
  }
};

struct clique_partition
{
  std::vector<std::vector<std::size_t>> cliques;

  std::size_t size() const { return cliques.size(); }

  /*! \brief Clique number of every node, cliques numbered in order of first appearance. */
  std::vector<std::size_t> growth_string() const
  {
    std::size_t n = 0u;
    for ( auto const& c : cliques )
      n += c.size();
    std::vector<std::size_t> rgs( n, 0u );
    for ( auto k = 0u; k < cliques.size(); ++k )
    {
      for ( auto v : cliques[k] )
        rgs[v] = k;
    }
    return rgs;
  }

  bool operator==( clique_partition const& ) const = default;
};

/*! \brief Sorts each clique and orders cliques by their smallest node. */
inline clique_partition canonicalize( clique_partition p )
{
  for ( auto& c : p.cliques )
    std::sort( c.begin(), c.end() );
  std::erase_if( p.cliques, []( auto const& c ) { return c.empty(); } );
  std::sort( p.cliques.begin(), p.cliques.end(), []( auto const& a, auto const& b ) { return a.front() < b.front(); } );
  return p;
}

/*! \brief Disjoint cover of all nodes by cliques of `g`. */
inline bool is_valid_partition( compat_graph const& g, clique_partition const& p )
{
  std::vector<bool> seen( g.size(), false );
  for ( auto const& c : p.cliques )
  {
    for ( auto i = 0u; i < c.size(); ++i )
    {
      if ( c[i] >= g.size() || seen[c[i]] )
        return false;
      seen[c[i]] = true;
      for ( auto j = i + 1u; j < c.size(); ++j )
      {
        if ( !g.adjacent( c[i], c[j] ) )
          return false;
      }
    }
  }
  return std::all_of( seen.begin(), seen.end(), []( bool b ) { return b; } );
}

/*! \brief Nodes are chart columns; edges join compatible columns. */
inline compat_graph build_compat_graph( chart const& ch )
{
  for ( auto c = 0u; c < ch.columns.size(); ++c )
  {
    auto const& e = ch.columns[c].entries;
    if ( std::none_of( e.begin(), e.end(), []( auto const& x ) { return x.state == cell_state::value; } ) )
      throw decomp_error( "column " + ch.column_label( c ) + " holds only don't-cares; drop it first" );
  }
  auto g = compat_graph::empty( ch.columns.size() );
  for ( auto i = 0u; i < ch.columns.size(); ++i )
  {
    for ( auto j = i + 1u; j < ch.columns.size(); ++j )
    {
      if ( columns_compatible( ch, i, j ) )
        g.connect( i, j );
    }
  }
  return g;
}

/*! \brief Sequential greedy: each node joins the first clique it is adjacent to entirely. */
inline clique_partition mcp_greedy( compat_graph const& g )
{
  clique_partition p;
  for ( auto v = 0u; v < g.size(); ++v )
  {
    auto it = std::find_if( p.cliques.begin(), p.cliques.end(), [&]( auto const& c ) {
      return std::all_of( c.begin(), c.end(), [&]( auto u ) { return g.adjacent( u, v ); } );
    } );
    if ( it == p.cliques.end() )
      p.cliques.push_back( { v } );
    else
      it->push_back( v );
  }
  return canonicalize( std::move( p ) );
}

inline constexpr std::size_t default_exact_node_bound = 24u;

namespace detail
{

class clique_search
{
public:
  explicit clique_search( compat_graph const& g ) : n_( g.size() ), adj_( g.size(), 0u )
  {
    if ( n_ > 64u )
      throw decomp_error( "exact clique partition supports at most 64 nodes" );
    for ( auto i = 0u; i < n_; ++i )
    {
      for ( auto j = 0u; j < n_; ++j )
      {
        if ( g.adjacent( i, j ) )
          adj_[i] |= std::uint64_t{ 1 } << j;
      }
    }
  }

  /* Size of a greedily found independent set: no clique holds two of its nodes. */
  std::size_t lower_bound() const
  {
    std::uint64_t chosen = 0u;
    std::size_t count = 0u;
    for ( auto v = 0u; v < n_; ++v )
    {
      if ( ( adj_[v] & chosen ) == 0u )
      {
        chosen |= std::uint64_t{ 1 } << v;
        ++count;
      }
    }
    return count;
  }

  /* All partitions into at most `k` cliques, canonical order, at most `limit` of them. */
  std::vector<clique_partition> run( std::size_t k, std::size_t limit )
  {
    k_ = k;
    limit_ = limit;
    found_.clear();
    cliques_.clear();
    label_.assign( n_, 0u );
    dfs( 0u );
    return found_;
  }

private:
  bool placeable( std::size_t v ) const
  {
    if ( cliques_.size() < k_ )
      return true;
    return std::any_of( cliques_.begin(), cliques_.end(), [&]( auto m ) { return ( adj_[v] & m ) == m; } );
  }

  void dfs( std::size_t v )
  {
    if ( found_.size() >= limit_ )
      return;
    if ( v == n_ )
    {
      clique_partition p;
      p.cliques.resize( cliques_.size() );
      for ( auto u = 0u; u < n_; ++u )
        p.cliques[label_[u]].push_back( u );
      found_.push_back( std::move( p ) );
      return;
    }
    for ( auto u = v; u < n_; ++u )
    {
      if ( !placeable( u ) )
        return;
    }
    for ( auto c = 0u; c < cliques_.size(); ++c )
    {
      if ( ( adj_[v] & cliques_[c] ) != cliques_[c] )
        continue;
      cliques_[c] |= std::uint64_t{ 1 } << v;
      label_[v] = c;
      dfs( v + 1u );
      cliques_[c] &= ~( std::uint64_t{ 1 } << v );
    }
    if ( cliques_.size() < k_ )
    {
      cliques_.push_back( std::uint64_t{ 1 } << v );
      label_[v] = cliques_.size() - 1u;
      dfs( v + 1u );
      cliques_.pop_back();
    }
  }

  std::size_t n_;
  std::vector<std::uint64_t> adj_;
  std::size_t k_{ 0u };
  std::size_t limit_{ 0u };
  std::vector<std::uint64_t> cliques_;
  std::vector<std::size_t> label_;
  std::vector<clique_partition> found_;
};

inline void require_exact_bound( compat_graph const& g, std::size_t node_bound )
{
  if ( g.size() > node_bound )
    throw decomp_error( "compatible graph has " + std::to_string( g.size() ) + " nodes, above the exact-search bound of " +
                        std::to_string( node_bound ) + "; use mcp_greedy" );
}

inline std::size_t minimum_cover_size( compat_graph const& g, clique_search& search )
{
  auto const upper = mcp_greedy( g ).size();
  for ( auto k = search.lower_bound(); k < upper; ++k )
  {
    if ( !search.run( k, 1u ).empty() )
      return k;
  }
  return upper;
}

} // namespace detail

/*! \brief A minimum clique partition; among optima the one with the smallest growth string. */
inline clique_partition mcp_exact( compat_graph const& g, std::size_t node_bound = default_exact_node_bound )
{
  detail::require_exact_bound( g, node_bound );
  if ( g.size() == 0u )
    return {};
  detail::clique_search search( g );
  auto const k = detail::minimum_cover_size( g, search );
  return search.run( k, 1u ).front();
}

/*! \brief All minimum clique partitions in canonical order, at most `limit`. */
inline std::vector<clique_partition> mcp_enumerate( compat_graph const& g, std::size_t limit,
                                                    std::size_t node_bound = default_exact_node_bound )
{
  detail::require_exact_bound( g, node_bound );
  if ( g.size() == 0u )
    return { clique_partition{} };
  detail::clique_search search( g );
  auto const k = detail::minimum_cover_size( g, search );
  return search.run( k, limit );
}

} // namespace decomp
