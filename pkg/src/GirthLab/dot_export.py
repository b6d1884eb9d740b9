import argparse

import arc_list
from digraph_core import Digraph


def to_dot(D: Digraph, name='D', highlight=None):
    """
    Render a digraph as Graphviz DOT text.

    - D: the digraph; vertices are written as their integer indices
    - name: graph name in the header line
    - highlight: optional cycle (vertex sequence) whose arcs get color=red

    One edge statement per arc; isolated vertices are not listed, so an
    arcless digraph renders as header and footer only.
    """
    cycle_arcs = set()
    if highlight:
        cycle_arcs = {(highlight[i], highlight[(i + 1) % len(highlight)]) for i in range(len(highlight))}

    lines = [f'digraph {name} {{']
    for u, v in D.arcs():
        attrs = ' [color=red]' if (u, v) in cycle_arcs else ''
        lines.append(f'  {u} -> {v}{attrs};')
    lines.append('}')
    return '\n'.join(lines) + '\n'


def draw_dot(D: Digraph, name='D', highlight=None):
    print(to_dot(D, name, highlight), end='')


if __name__ == '__main__':
    parser = argparse.ArgumentParser(description='DOT renderer for arc-list files')
    parser.add_argument('--input', '-i', required=True, help='Arc-list file (header "n <count>", then "u v" lines)')
    parser.add_argument('--name', default='D', help='Graph name in the DOT header')

    args = parser.parse_args()
    draw_dot(arc_list.read_file(args.input), name=args.name)
