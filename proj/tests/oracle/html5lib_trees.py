"""Prints reference trees for malformed HTML inputs using html5lib.

Output format matches dump_tree() in dom_test.cpp: one line per element
(indent = depth below <html>, tag, sorted attributes) or merged text run.
Whitespace-only text is omitted.
"""
import json
import sys

import html5lib

CASES = {
    "unclosed_p": "<p>one<p>two<div>three</div>",
    "misnested_inline": "<b>bold<i>both</b>italic</i> tail",
    "table_foster": "<table><tr><td>cell</td></tr>stray<tr><td>x</td></table>",
    "missing_head_body": "<title>T</title><div class=a>body text</div>",
    "unclosed_li": "<ul><li>a<li>b<li>c</ul><span>after</span>",
    "attrs_case": "<DIV ID=Main Class='x  y'><A HREF=/t/1>link</A></DIV>",
    "stray_end_tags": "</span><div>a</p>b</div></em>",
    "nested_forms": "<form id=f1><input name=u><form id=f2><input name=p></form>",
}


def walk(node, depth, out):
    text = []

    def flush():
        if text:
            s = " ".join("".join(text).split())
            if s:
                out.append("  " * depth + json.dumps(s))
            text.clear()

    for child in node.childNodes:
        if child.nodeType == child.TEXT_NODE:
            text.append(child.data)
        elif child.nodeType == child.ELEMENT_NODE:
            flush()
            attrs = sorted((k, v) for k, v in child.attributes.items())
            line = "  " * depth + child.tagName
            for k, v in attrs:
                line += " %s=%s" % (k, json.dumps(v))
            out.append(line)
            walk(child, depth + 1, out)
    flush()


def main():
    for name, src in CASES.items():
        doc = html5lib.parse(src, treebuilder="dom", namespaceHTMLElements=False)
        out = []
        walk(doc, 0, out)
        print("{%s, %s, %s}," % (json.dumps(name), json.dumps(src), json.dumps("\n".join(out) + "\n")))


if __name__ == "__main__":
    sys.exit(main())
