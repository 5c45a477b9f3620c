"""The command grammar, kept in one place.

This text is the single source for the reference docs and for the
system prompt sent to translation providers, so the three can never
drift apart.
"""

GRAMMAR_TEXT = """\
program   := { line }
line      := statement? comment? NEWLINE
statement := box | sphere | hypar | grid | boolop | move | delete | bake | sunstudy | undo
box       := "box" qty qty qty [place] [name]
sphere    := "sphere" qty [place | "on" "edge" IDENT (INT [FLOAT] | "random")] ["quality" INT] [name]
hypar     := "hypar" qty qty "corners" qty qty qty qty "thickness" qty [name]
grid      := "grid" INT INT "footprint" qty qty "height" qty "spacing" qty [name]
boolop    := ("union" | "intersect" | "difference") IDENT IDENT [name]
move      := "move" IDENT qty qty qty
delete    := "delete" IDENT
bake      := "bake" IDENT
sunstudy  := "sunstudy" "lat" FLOAT "lon" FLOAT "date" DATE ["interval" INT] ["cell" FLOAT]
undo      := "undo"
qty       := NUMBER ["m" | "cm"]
place     := "at" qty qty qty
name      := "name" IDENT
comment   := "#" to end of line
DATE      := YYYY-MM-DD
IDENT     := [A-Za-z_][A-Za-z0-9_]*

Notes:
- Quantities default to meters; "cm" divides by 100.  "30cm" and "0.3" are equal.
- box extents are width, depth, height; placement is the minimum corner (default 0 0 0).
- sphere placement is its center.  "on edge" rests the sphere on a box edge:
  indices 0..3 are the bottom ring counterclockwise from the min-x/min-y corner,
  4..7 the verticals, 8..11 the top ring.  The edge parameter defaults to 0.5;
  "random" draws edge and parameter from the session's seeded stream.
- hypar corner heights are listed h00 h10 h01 h11 over the plan rectangle.
- grid lays out rows x cols boxes; spacing is the gap between footprints.
- boolop keeps both operands as drafts and adds the result as a new object,
  named <kind>_of_<a>_<b> unless a name is given.
- move, delete and bake target one existing object by name.
- sunstudy defaults: interval 10 (minutes), cell 1.0 (meters).
- undo must be the only statement in its batch.
- Limits: 10000 objects, 2000000 triangles, grid rows*cols <= 10000.
"""
