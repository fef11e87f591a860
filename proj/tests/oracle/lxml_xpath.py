"""Prints reference XPath results (as indexed absolute paths) using lxml
over an html5lib-built tree. Output rows are pasted into xpath_test.cpp."""
import json

import html5lib
from lxml import etree

DOC = """<html><head><title>Forum</title></head><body>
<div id="nav"><a class="link home" href="/">Home</a><a class="link" href="/s/1">Sec</a></div>
<div class="block"><div class="row"><div class="cell"><a class="title" href="/t/1">One</a><span>x</span></div></div>
<div class="row"><div class="cell"><a class="title hot" href="/t/2">Two</a><a class="title" href="/t/3">Three</a></div></div></div>
<ul><li data-k="a b">1</li><li data-k="c">2</li><li>3</li></ul>
<div class="block"><article class="post"><p>p1</p></article><article class="post"><p>p2</p><p>p3</p></article></div>
<div><div><div><span id="deep">d</span></div></div></div>
</body></html>"""

EXPRS = [
    "//a",
    "//div/a",
    "/html/body/div[2]/div[2]/div/a[2]",
    "//div[@class='row']//a",
    "//a[contains(@href,'/t/')]",
    "//*[contains(concat(' ',normalize-space(@class),' '),' title ')]",
    "//a[contains(concat(' ',normalize-space(@class),' '),' title ')][2]",
    "//a[2]",
    "//li[@data-k='c']",
    "//li[2]",
    "//*[@id='deep']",
    "//div//div/span",
    "//article/p[1]",
    "//article//p",
    "//p | //a[@class='link']",
    "/html/body/*[3]/li",
    "//div[@class='block'][2]/article[2]/p[2]",
    "//*[2]",
    "//nothing",
]


def abspath(el):
    steps = []
    while el is not None and isinstance(el.tag, str):
        parent = el.getparent()
        if parent is None:
            steps.append("%s[1]" % el.tag)
        else:
            same = [c for c in parent if c.tag == el.tag]
            steps.append("%s[%d]" % (el.tag, same.index(el) + 1))
        el = parent
    return "/" + "/".join(reversed(steps))


def main():
    tree = html5lib.parse(DOC, treebuilder="lxml", namespaceHTMLElements=False)
    print("const char* kDoc = %s;" % json.dumps(DOC))
    for e in EXPRS:
        res = tree.xpath(e)
        print("    {%s, {%s}}," % (json.dumps(e), ", ".join(json.dumps(abspath(r)) for r in res)))


if __name__ == "__main__":
    main()
