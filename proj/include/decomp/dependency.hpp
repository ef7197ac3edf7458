/*!
  \file dependency.hpp
  \brief Functional and multi-valued dependency checks

  Each check runs independent procedures and insists they agree:

  - FD X → Y: the pairwise tuple definition, the fork shape of
    G(π_X × π_Y), and refinement π_X ≤ π_Y.
  - MVD X ↠ Y: the tuple-completion definition, uniformity of
    G(π_XY × π_XZ) with one component per X-value, and (in
    `lossless_check`) R = R[XY] ⋈ R[XZ].

  A disagreement throws `consistency_error`. Tuples carrying a don't-care
  in a checked attribute are left out: dependencies are only defined for
  fully specified tuples.
*/

#pragma once

#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "bigraph.hpp"
#include "partition.hpp"
#include "relation.hpp"

namespace decomp
{

enum class dependency_kind
{
  fd,
  mvd
};

struct dependency_report
{
  dependency_kind kind{ dependency_kind::fd };
  attr_set lhs;
  attr_set rhs;
  bool holds{ true };
  /*! \brief Violating pair (t1, t2); present iff `holds` is false. */
  std::optional<std::pair<tuple_id, tuple_id>> witness;

  std::string to_string() const
  {
    auto const join = []( attr_set const& s ) {
      std::string out;
      for ( auto const& a : s )
        out += ( out.empty() ? "" : "," ) + a;
      return out.empty() ? std::string( "{}" ) : out;
    };
    std::string s = kind == dependency_kind::fd ? "FD " : "MVD ";
    s += join( lhs ) + ( kind == dependency_kind::fd ? " -> " : " ->> " ) + join( rhs );
    s += holds ? ": holds" : ": fails";
    if ( witness )
      s += " (witness t" + std::to_string( witness->first ) + ", t" + std::to_string( witness->second ) + ")";
    return s;
  }
};

namespace detail
{

inline void require_attrs( relation const& r, attr_set const& attrs )
{
  std::set<std::string> seen;
  for ( auto const& a : attrs )
  {
    r.attr_index( a );
    if ( !seen.insert( a ).second )
      throw decomp_error( "attribute '" + a + "' listed twice" );
  }
}

inline attr_set set_union( attr_set a, attr_set const& b )
{
  for ( auto const& x : b )
  {
    if ( std::find( a.begin(), a.end(), x ) == a.end() )
      a.push_back( x );
  }
  return a;
}

inline attr_set set_minus( attr_set const& a, attr_set const& b )
{
  attr_set out;
  for ( auto const& x : a )
  {
    if ( std::find( b.begin(), b.end(), x ) == b.end() )
      out.push_back( x );
  }
  return out;
}

inline bool disjoint( attr_set const& a, attr_set const& b )
{
  return std::none_of( a.begin(), a.end(), [&]( auto const& x ) { return std::find( b.begin(), b.end(), x ) != b.end(); } );
}

/* Tuples with no don't-care among `attrs`. */
inline relation specified_on( relation const& r, attr_set const& attrs )
{
  auto const idx = r.attr_indices( attrs );
  relation out( r.schema() );
  for ( auto const& t : r.tuples() )
  {
    if ( std::none_of( idx.begin(), idx.end(), [&]( auto i ) { return t.values[i] == dont_care; } ) )
      out.add_tuple( t.values, t.id, t.sources );
  }
  return out;
}

inline std::optional<std::pair<tuple_id, tuple_id>> fd_violation( relation const& r, attr_set const& x, attr_set const& y )
{
  auto const xi = r.attr_indices( x ), yi = r.attr_indices( y );
  auto const& ts = r.tuples();
  for ( auto i = 0u; i < ts.size(); ++i )
  {
    for ( auto j = i + 1u; j < ts.size(); ++j )
    {
      if ( relation::restrict( ts[i], xi ) == relation::restrict( ts[j], xi ) &&
           relation::restrict( ts[i], yi ) != relation::restrict( ts[j], yi ) )
        return std::make_pair( std::min( ts[i].id, ts[j].id ), std::max( ts[i].id, ts[j].id ) );
    }
  }
  return std::nullopt;
}

inline std::vector<int> concat( std::vector<int> a, std::vector<int> const& b )
{
  a.insert( a.end(), b.begin(), b.end() );
  return a;
}

inline std::optional<std::pair<tuple_id, tuple_id>> mvd_violation( relation const& r, attr_set const& x, attr_set const& y,
                                                                  attr_set const& z )
{
  auto const xi = r.attr_indices( x ), yi = r.attr_indices( y ), zi = r.attr_indices( z );
  std::set<std::vector<int>> rows;
  for ( auto const& t : r.tuples() )
    rows.insert( concat( concat( relation::restrict( t, xi ), relation::restrict( t, yi ) ), relation::restrict( t, zi ) ) );
  for ( auto const& t1 : r.tuples() )
  {
    auto const x1 = relation::restrict( t1, xi );
    for ( auto const& t2 : r.tuples() )
    {
      if ( relation::restrict( t2, xi ) != x1 )
        continue;
      if ( !rows.count( concat( concat( x1, relation::restrict( t1, yi ) ), relation::restrict( t2, zi ) ) ) )
        return std::make_pair( t1.id, t2.id );
    }
  }
  return std::nullopt;
}

} // namespace detail

/*! \brief Decides FD X → Y three ways and returns the agreed verdict. */
inline dependency_report holds_fd( relation const& r, attr_set const& x, attr_set const& y )
{
  detail::require_attrs( r, x );
  detail::require_attrs( r, y );
  auto const s = detail::specified_on( r, y );

  auto const witness = detail::fd_violation( s, x, y );
  auto const px = induced_partition( s, x ), py = induced_partition( s, y );
  auto const fork = is_fork( build_graph( px, py ) );
  auto const refined = refines( px, py );
  if ( fork != !witness.has_value() || refined != fork )
    throw consistency_error( "FD procedures disagree (definition/fork/refinement)" );
  return { dependency_kind::fd, x, y, fork, witness };
}

/*! \brief Decides MVD X ↠ Y, with Z the rest of the schema. */
inline dependency_report holds_mvd( relation const& r, attr_set const& x, attr_set const& y )
{
  detail::require_attrs( r, x );
  detail::require_attrs( r, y );
  if ( !detail::disjoint( x, y ) )
    throw decomp_error( "MVD sides must be disjoint" );
  auto const z = detail::set_minus( r.names(), detail::set_union( x, y ) );
  auto const s = detail::specified_on( r, r.names() );

  auto const witness = detail::mvd_violation( s, x, y, z );
  auto const g = build_graph( induced_partition( s, detail::set_union( x, y ) ), induced_partition( s, detail::set_union( x, z ) ) );
  auto const uniform = is_uniform_over( g, induced_partition( s, x ) );
  if ( uniform != !witness.has_value() )
    throw consistency_error( "MVD procedures disagree (definition/uniform graph)" );
  return { dependency_kind::mvd, x, y, uniform, witness };
}

/*! \brief R = R[XY] ⋈ R[XZ], cross-checked against `holds_mvd( R, X, Y )`.

  X, Y, Z must be pairwise disjoint and cover the schema.
*/
inline bool lossless_check( relation const& r, attr_set const& x, attr_set const& y, attr_set const& z )
{
  for ( auto const* s : { &x, &y, &z } )
    detail::require_attrs( r, *s );
  if ( !detail::disjoint( x, y ) || !detail::disjoint( x, z ) || !detail::disjoint( y, z ) )
    throw decomp_error( "lossless check needs pairwise disjoint attribute sets" );
  if ( x.size() + y.size() + z.size() != r.arity() )
    throw decomp_error( "lossless check needs X, Y, Z to cover the schema" );

  auto const s = detail::specified_on( r, r.names() );
  auto const joined = natural_join( project( s, detail::set_union( x, y ) ), project( s, detail::set_union( x, z ) ) );
  auto const lossless = relations_equal( s, joined );
  if ( lossless != holds_mvd( r, x, y ).holds )
    throw consistency_error( "lossless join disagrees with the MVD check" );
  return lossless;
}

/*! \brief Re-applies a failure witness to the definition; true iff the violation is reproduced. */
inline bool replay_witness( relation const& r, dependency_report const& rep )
{
  if ( !rep.witness )
    return false;
  auto const& t1 = r.by_id( rep.witness->first );
  auto const& t2 = r.by_id( rep.witness->second );
  auto const xi = r.attr_indices( rep.lhs ), yi = r.attr_indices( rep.rhs );
  if ( relation::restrict( t1, xi ) != relation::restrict( t2, xi ) )
    return false;
  if ( rep.kind == dependency_kind::fd )
    return relation::restrict( t1, yi ) != relation::restrict( t2, yi );

  auto const z = detail::set_minus( r.names(), detail::set_union( rep.lhs, rep.rhs ) );
  auto const zi = r.attr_indices( z );
  auto const s = detail::specified_on( r, r.names() );
  for ( auto const& t3 : s.tuples() )
  {
    if ( relation::restrict( t3, xi ) == relation::restrict( t1, xi ) &&
         relation::restrict( t3, yi ) == relation::restrict( t1, yi ) &&
         relation::restrict( t3, zi ) == relation::restrict( t2, zi ) )
      return false;
  }
  return true;
}

} // namespace decomp
