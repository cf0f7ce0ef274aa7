"""From formula text to a tree and back.

Formulas arrive as strings people typed into cells. The parser turns them
into a small immutable tree; the renderer turns any tree back into one
canonical string: uppercase, no spaces, only the parentheses the structure
needs. Run me with: python demos/01_parse_and_render.py
"""

from sheetsmith import parse, render

messy = '= if ( min(c5:d5) < 40 , "Fail" , "Pass" )'
ast = parse(messy)

print("input:    ", messy)
print("canonical:", render(ast))
print("tree:     ", ast.root)
print()

# Rendering never invents or drops parentheses that matter. Subtraction
# groups to the left, so the right-hand grouping below has to keep its
# parens while the redundant left-hand ones disappear.
for text in ["=(A1-A2)-A3", "=A1-(A2-A3)", "=((A1))+(((2)))"]:
    print(f"{text:22} -> {render(parse(text))}")
print()

# Absolute markers survive rendering but do not change what a reference
# means to the rest of the toolkit.
pinned = parse("=MIN($C$5:D9)")
print("pinned range:", render(pinned))
print()

# The round trip is exact: parsing the rendering gives the same tree.
for text in ["=-A1^2", "=2^3^4", '=IF(A1=B1,"eq","ne")']:
    ast = parse(text)
    assert parse(render(ast)) == ast
    print(f"{text:28} round-trips")
