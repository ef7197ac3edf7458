/*!
  \file chart.hpp
  \brief Decomposition charts M_ZY

  Rows are the blocks of π_Z (free set), columns the blocks of π_Y (bound
  set), and each cell holds the output value of the single tuple in the
  intersection. A cell can also be a don't-care (`-`: the tuple exists,
  its output is unspecified) or null (`φ`: no tuple, which happens only
  when Y and Z share attributes and the row and column disagree on them).

  Merging never loses the original cells: a column remembers its
  constituent π_Y blocks, and the per-block cells stay in `cells`.
*/

#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "dependency.hpp"
#include "partition.hpp"
#include "relation.hpp"

namespace decomp
{

enum class cell_state
{
  null,
  dont_care,
  value
};

struct cell
{
  cell_state state{ cell_state::null };
  int value{ -1 };

  bool operator==( cell const& ) const = default;
};

struct chart_column
{
  /*! \brief Constituent π_Y blocks, as indices into `chart::bound_blocks`, ascending. */
  std::vector<std::size_t> blocks;
  /*! \brief One entry per chart row. */
  std::vector<cell> entries;
};

struct axis_block
{
  std::string label;
  std::vector<int> key;
  std::vector<tuple_id> tuples;
};

/*! \brief Rows and π_Y blocks grouped by their value on C = Y ∩ Z. */
struct subchart_index
{
  struct group
  {
    std::string label;
    std::vector<std::size_t> rows;
    std::vector<std::size_t> blocks;
  };
  std::vector<group> groups;

  std::size_t group_of_block( std::size_t b ) const
  {
    for ( auto g = 0u; g < groups.size(); ++g )
    {
      if ( std::find( groups[g].blocks.begin(), groups[g].blocks.end(), b ) != groups[g].blocks.end() )
        return g;
    }
    throw decomp_error( "block outside every sub-chart" );
  }
};

struct chart
{
  relation source;
  attr_set bound;
  attr_set free;
  attr_set common;
  std::string output;

  std::vector<axis_block> rows;
  std::vector<axis_block> bound_blocks;
  /*! \brief Tuple at (row, π_Y block), absent for null cells. */
  std::vector<std::vector<std::optional<tuple_id>>> cells;
  std::vector<chart_column> columns;
  /*! \brief π_Y blocks of columns discarded for holding only don't-cares. */
  std::vector<std::size_t> dropped;
  std::optional<subchart_index> diagonal;

  std::string row_label( std::size_t r ) const { return "Q" + rows[r].label; }

  std::string column_label( std::size_t c ) const
  {
    std::string s = "P";
    for ( auto i = 0u; i < columns[c].blocks.size(); ++i )
      s += ( i ? "∨" : "" ) + bound_blocks[columns[c].blocks[i]].label;
    return s;
  }

  std::vector<tuple_id> column_tuples( std::size_t c ) const
  {
    std::vector<tuple_id> ids;
    for ( auto b : columns[c].blocks )
      ids.insert( ids.end(), bound_blocks[b].tuples.begin(), bound_blocks[b].tuples.end() );
    std::sort( ids.begin(), ids.end() );
    return ids;
  }

  std::vector<tuple_id> cell_tuples( std::size_t r, std::size_t c ) const
  {
    std::vector<tuple_id> ids;
    for ( auto b : columns[c].blocks )
    {
      if ( cells[r][b] )
        ids.push_back( *cells[r][b] );
    }
    std::sort( ids.begin(), ids.end() );
    return ids;
  }

  /*! \brief The unmerged entry at (row, π_Y block), read back from the source relation. */
  cell base_entry( std::size_t r, std::size_t b ) const
  {
    if ( !cells[r][b] )
      return {};
    auto const v = source.by_id( *cells[r][b] ).values[source.attr_index( output )];
    return v == dont_care ? cell{ cell_state::dont_care, -1 } : cell{ cell_state::value, v };
  }

  std::string entry_string( cell const& e ) const
  {
    switch ( e.state )
    {
    case cell_state::null:
      return "φ";
    case cell_state::dont_care:
      return "-";
    default:
      return source.value_string( source.attr_index( output ), e.value );
    }
  }

  std::optional<std::size_t> column_of_block( std::size_t b ) const
  {
    for ( auto c = 0u; c < columns.size(); ++c )
    {
      if ( std::find( columns[c].blocks.begin(), columns[c].blocks.end(), b ) != columns[c].blocks.end() )
        return c;
    }
    return std::nullopt;
  }
};

namespace detail
{

inline std::map<std::vector<int>, std::vector<tuple_id>> group_ids( relation const& r, std::vector<std::size_t> const& idx )
{
  std::map<std::vector<int>, std::vector<tuple_id>> groups;
  for ( auto const& t : r.tuples() )
    groups[relation::restrict( t, idx )].push_back( t.id );
  return groups;
}

inline std::vector<int> pick( std::vector<int> const& key, std::vector<std::size_t> const& positions )
{
  std::vector<int> out;
  for ( auto p : positions )
    out.push_back( key[p] );
  return out;
}

inline std::vector<std::size_t> positions_of( attr_set const& within, attr_set const& wanted )
{
  std::vector<std::size_t> pos;
  for ( auto const& a : wanted )
    pos.push_back( static_cast<std::size_t>( std::find( within.begin(), within.end(), a ) - within.begin() ) );
  return pos;
}

inline void check_column( chart const& ch, std::size_t c )
{
  if ( c >= ch.columns.size() )
    throw decomp_error( "column index " + std::to_string( c ) + " out of range" );
}

/* Combines the entries of several columns row by row. Concrete values must agree. */
inline chart_column combine( chart const& ch, std::vector<std::size_t> const& cols )
{
  chart_column merged;
  for ( auto c : cols )
    merged.blocks.insert( merged.blocks.end(), ch.columns[c].blocks.begin(), ch.columns[c].blocks.end() );
  std::sort( merged.blocks.begin(), merged.blocks.end() );
  for ( auto r = 0u; r < ch.rows.size(); ++r )
  {
    cell e;
    for ( auto c : cols )
    {
      auto const& x = ch.columns[c].entries[r];
      if ( x.state == cell_state::value )
      {
        if ( e.state == cell_state::value && e.value != x.value )
          throw consistency_error( "merged cell at row " + ch.row_label( r ) + " has conflicting output values" );
        e = x;
      }
      else if ( x.state == cell_state::dont_care && e.state == cell_state::null )
      {
        e = x;
      }
    }
    merged.entries.push_back( e );
  }
  return merged;
}

inline chart replace_columns( chart ch, std::vector<std::vector<std::size_t>> const& sets )
{
  std::vector<bool> used( ch.columns.size(), false );
  std::vector<chart_column> next;
  for ( auto const& s : sets )
  {
    for ( auto c : s )
    {
      check_column( ch, c );
      if ( used[c] )
        throw decomp_error( "column " + std::to_string( c ) + " merged twice" );
      used[c] = true;
    }
    if ( !s.empty() )
      next.push_back( combine( ch, s ) );
  }
  for ( auto c = 0u; c < ch.columns.size(); ++c )
  {
    if ( !used[c] )
      next.push_back( ch.columns[c] );
  }
  std::sort( next.begin(), next.end(), []( auto const& a, auto const& b ) { return a.blocks.front() < b.blocks.front(); } );
  ch.columns = std::move( next );
  return ch;
}

} // namespace detail

/*! \brief Builds M_ZY for a single-output truth table.

  Y ∪ Z must be exactly the input attributes. Rows and columns are sorted
  by label under the declared value order. When C = Y ∩ Z is nonempty the
  chart carries its diagonal sub-chart index.
*/
inline chart build_chart( relation const& r, attr_set const& y, attr_set const& z )
{
  auto const outs = r.outputs();
  if ( outs.size() != 1u )
    throw decomp_error( "a decomposition chart needs exactly one output attribute" );
  detail::require_attrs( r, y );
  detail::require_attrs( r, z );
  auto const in = r.inputs();
  auto const yz = detail::set_union( y, z );
  if ( yz.size() != in.size() || !detail::set_minus( in, yz ).empty() )
    throw decomp_error( "bound and free sets must together be exactly the input attributes" );
  if ( !r.is_truth_table() )
    throw decomp_error( "relation is not a truth table (repeated input vector)" );

  chart ch;
  ch.source = r;
  ch.bound = y;
  ch.free = z;
  ch.output = outs.front();
  for ( auto const& a : y )
  {
    if ( std::find( z.begin(), z.end(), a ) != z.end() )
      ch.common.push_back( a );
  }

  auto const yi = r.attr_indices( y ), zi = r.attr_indices( z );
  for ( auto& [key, ids] : detail::group_ids( r, zi ) )
    ch.rows.push_back( { render_label( r, zi, key ), key, ids } );
  for ( auto& [key, ids] : detail::group_ids( r, yi ) )
    ch.bound_blocks.push_back( { render_label( r, yi, key ), key, ids } );

  std::map<std::vector<int>, std::size_t> row_of, block_of;
  for ( auto i = 0u; i < ch.rows.size(); ++i )
    row_of[ch.rows[i].key] = i;
  for ( auto i = 0u; i < ch.bound_blocks.size(); ++i )
    block_of[ch.bound_blocks[i].key] = i;

  ch.cells.assign( ch.rows.size(), std::vector<std::optional<tuple_id>>( ch.bound_blocks.size() ) );
  for ( auto const& t : r.tuples() )
    ch.cells[row_of.at( relation::restrict( t, zi ) )][block_of.at( relation::restrict( t, yi ) )] = t.id;

  auto const c_in_z = detail::positions_of( z, ch.common ), c_in_y = detail::positions_of( y, ch.common );
  for ( auto rr = 0u; rr < ch.rows.size(); ++rr )
  {
    for ( auto b = 0u; b < ch.bound_blocks.size(); ++b )
    {
      bool const agree = detail::pick( ch.rows[rr].key, c_in_z ) == detail::pick( ch.bound_blocks[b].key, c_in_y );
      if ( agree && !ch.cells[rr][b] )
        throw decomp_error( "truth table is missing the minterm at (" + ch.row_label( rr ) + ", P" +
                            ch.bound_blocks[b].label + "); extend missing rows first" );
    }
  }

  for ( auto b = 0u; b < ch.bound_blocks.size(); ++b )
  {
    chart_column col{ { b }, {} };
    for ( auto rr = 0u; rr < ch.rows.size(); ++rr )
      col.entries.push_back( ch.base_entry( rr, b ) );
    ch.columns.push_back( std::move( col ) );
  }

  if ( !ch.common.empty() )
  {
    subchart_index index;
    std::map<std::vector<int>, std::size_t> group_of;
    auto const ci = r.attr_indices( ch.common );
    for ( auto const& [key, ids] : detail::group_ids( r, ci ) )
    {
      group_of[key] = index.groups.size();
      index.groups.push_back( { render_label( r, ci, key ), {}, {} } );
    }
    for ( auto rr = 0u; rr < ch.rows.size(); ++rr )
      index.groups[group_of.at( detail::pick( ch.rows[rr].key, c_in_z ) )].rows.push_back( rr );
    for ( auto b = 0u; b < ch.bound_blocks.size(); ++b )
      index.groups[group_of.at( detail::pick( ch.bound_blocks[b].key, c_in_y ) )].blocks.push_back( b );
    ch.diagonal = std::move( index );
  }
  return ch;
}

/*! \brief Columns agree on every row (same nulls, same values). Fully specified columns only. */
inline bool columns_equivalent( chart const& ch, std::size_t i, std::size_t j )
{
  detail::check_column( ch, i );
  detail::check_column( ch, j );
  for ( auto const c : { i, j } )
  {
    for ( auto const& e : ch.columns[c].entries )
    {
      if ( e.state == cell_state::dont_care )
        throw decomp_error( "column " + ch.column_label( c ) + " has don't-cares; use columns_compatible" );
    }
  }
  return ch.columns[i].entries == ch.columns[j].entries;
}

/*! \brief On every row the entries are both null, or agree, or at least one is `-`. */
inline bool columns_compatible( chart const& ch, std::size_t i, std::size_t j )
{
  detail::check_column( ch, i );
  detail::check_column( ch, j );
  auto const& a = ch.columns[i].entries;
  auto const& b = ch.columns[j].entries;
  for ( auto r = 0u; r < a.size(); ++r )
  {
    if ( ( a[r].state == cell_state::null ) != ( b[r].state == cell_state::null ) )
      return false;
    if ( a[r].state == cell_state::value && b[r].state == cell_state::value && a[r].value != b[r].value )
      return false;
  }
  return true;
}

/*! \brief Merges pairwise compatible (or equivalent) columns into one. */
inline chart merge_columns( chart const& ch, std::vector<std::size_t> const& cols )
{
  for ( auto a = 0u; a < cols.size(); ++a )
  {
    for ( auto b = a + 1u; b < cols.size(); ++b )
    {
      if ( !columns_compatible( ch, cols[a], cols[b] ) )
        throw decomp_error( "columns " + ch.column_label( cols[a] ) + " and " + ch.column_label( cols[b] ) +
                            " conflict; merging them would break FD WZ -> F" );
    }
  }
  return detail::replace_columns( ch, { cols } );
}

/*! \brief Merges several disjoint sets of pairwise compatible columns at once. */
inline chart merge_column_sets( chart const& ch, std::vector<std::vector<std::size_t>> const& sets )
{
  for ( auto const& s : sets )
  {
    for ( auto a = 0u; a < s.size(); ++a )
    {
      for ( auto b = a + 1u; b < s.size(); ++b )
      {
        if ( !columns_compatible( ch, s[a], s[b] ) )
          throw decomp_error( "columns " + ch.column_label( s[a] ) + " and " + ch.column_label( s[b] ) + " conflict" );
      }
    }
  }
  return detail::replace_columns( ch, sets );
}

/*! \brief Merges columns of different sub-charts; no row may be non-null in two of them. */
inline chart merge_orthogonal( chart const& ch, std::vector<std::vector<std::size_t>> const& sets )
{
  for ( auto const& s : sets )
  {
    for ( auto r = 0u; r < ch.rows.size(); ++r )
    {
      std::size_t non_null = 0u;
      for ( auto c : s )
      {
        detail::check_column( ch, c );
        non_null += ch.columns[c].entries[r].state != cell_state::null ? 1u : 0u;
      }
      if ( non_null > 1u )
        throw decomp_error( "columns to merge are not orthogonal at row " + ch.row_label( r ) );
    }
  }
  return detail::replace_columns( ch, sets );
}

/*! \brief Removes columns whose non-null entries are all `-`; their blocks go to `dropped`. */
inline chart drop_dontcare_columns( chart ch )
{
  std::vector<chart_column> kept;
  for ( auto& col : ch.columns )
  {
    bool const all_dc = std::all_of( col.entries.begin(), col.entries.end(),
                                     []( auto const& e ) { return e.state != cell_state::value; } ) &&
                        std::any_of( col.entries.begin(), col.entries.end(),
                                     []( auto const& e ) { return e.state == cell_state::dont_care; } );
    if ( all_dc )
      ch.dropped.insert( ch.dropped.end(), col.blocks.begin(), col.blocks.end() );
    else
      kept.push_back( std::move( col ) );
  }
  std::sort( ch.dropped.begin(), ch.dropped.end() );
  ch.columns = std::move( kept );
  return ch;
}

/*! \brief Merges equivalent columns until none are left.

  Pairs are taken in canonical order, or in random order when `rng` is
  given; the resulting column set is the same either way because
  equivalence is transitive.
*/
inline chart merge_equivalent_columns( chart ch, std::mt19937* rng = nullptr )
{
  for ( ;; )
  {
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    for ( auto i = 0u; i < ch.columns.size(); ++i )
    {
      for ( auto j = i + 1u; j < ch.columns.size(); ++j )
      {
        if ( columns_equivalent( ch, i, j ) )
          pairs.emplace_back( i, j );
      }
    }
    if ( pairs.empty() )
      return ch;
    auto const pick = rng ? std::uniform_int_distribution<std::size_t>( 0u, pairs.size() - 1u )( *rng ) : 0u;
    ch = merge_columns( ch, { pairs[pick].first, pairs[pick].second } );
  }
}

/*! \brief Partition of the tuple ids induced by the columns (dropped blocks excluded). */
inline partition column_partition( chart const& ch )
{
  std::vector<partition::block> blocks;
  std::vector<std::string> labels;
  for ( auto c = 0u; c < ch.columns.size(); ++c )
  {
    blocks.push_back( ch.column_tuples( c ) );
    labels.push_back( ch.column_label( c ).substr( 1 ) );
  }
  return partition( std::move( blocks ), std::move( labels ) );
}

namespace detail
{

inline std::size_t display_width( std::string const& s )
{
  return static_cast<std::size_t>(
      std::count_if( s.begin(), s.end(), []( char ch ) { return ( static_cast<unsigned char>( ch ) & 0xC0u ) != 0x80u; } ) );
}

inline std::string pad( std::string s, std::size_t width )
{
  auto const w = display_width( s );
  if ( w < width )
    s.append( width - w, ' ' );
  return s;
}

} // namespace detail

/*! \brief Text rendering in chart layout: `φ` for null, `-` for don't-care.

  Diagonal charts list rows and single-group columns sub-chart by
  sub-chart.
*/
inline std::string to_string( chart const& ch )
{
  std::vector<std::size_t> row_order, col_order;
  if ( ch.diagonal )
  {
    for ( auto const& g : ch.diagonal->groups )
      row_order.insert( row_order.end(), g.rows.begin(), g.rows.end() );
    bool single_group = true;
    std::vector<std::vector<std::size_t>> by_group( ch.diagonal->groups.size() );
    for ( auto c = 0u; c < ch.columns.size(); ++c )
    {
      std::set<std::size_t> gs;
      for ( auto b : ch.columns[c].blocks )
        gs.insert( ch.diagonal->group_of_block( b ) );
      single_group = single_group && gs.size() == 1u;
      by_group[*gs.begin()].push_back( c );
    }
    if ( single_group )
    {
      for ( auto const& g : by_group )
        col_order.insert( col_order.end(), g.begin(), g.end() );
    }
  }
  if ( row_order.empty() )
  {
    for ( auto r = 0u; r < ch.rows.size(); ++r )
      row_order.push_back( r );
  }
  if ( col_order.empty() )
  {
    for ( auto c = 0u; c < ch.columns.size(); ++c )
      col_order.push_back( c );
  }

  auto const join = []( attr_set const& s ) {
    std::string out;
    for ( auto const& a : s )
      out += ( out.empty() ? "" : "," ) + a;
    return out.empty() ? std::string( "{}" ) : out;
  };

  std::vector<std::vector<std::string>> grid;
  grid.push_back( { "" } );
  for ( auto c : col_order )
    grid.back().push_back( ch.column_label( c ) );
  for ( auto r : row_order )
  {
    grid.push_back( { ch.row_label( r ) } );
    for ( auto c : col_order )
      grid.back().push_back( ch.entry_string( ch.columns[c].entries[r] ) );
  }
  std::vector<std::size_t> width( grid.front().size(), 0u );
  for ( auto const& line : grid )
  {
    for ( auto k = 0u; k < line.size(); ++k )
      width[k] = std::max( width[k], detail::display_width( line[k] ) );
  }

  std::ostringstream os;
  os << "rows " << join( ch.free ) << " | columns " << join( ch.bound ) << " | output " << ch.output << "\n";
  for ( auto const& line : grid )
  {
    std::string text;
    for ( auto k = 0u; k < line.size(); ++k )
      text += ( k ? "  " : "" ) + ( k + 1u < line.size() ? detail::pad( line[k], width[k] ) : line[k] );
    os << text << "\n";
  }
  if ( !ch.dropped.empty() )
  {
    os << "dropped:";
    for ( auto b : ch.dropped )
      os << " P" << ch.bound_blocks[b].label;
    os << "\n";
  }
  return os.str();
}

} // namespace decomp
