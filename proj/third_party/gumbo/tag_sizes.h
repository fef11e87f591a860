// Do not edit
// Generated from tag.in (see gentags.py)

1, 4, 7, 7, 8, 11, 12, 7, 12, 13, 16, 14, 6, 4, 7, 5, 5, 1, 4, 8, 3, 3, 7, 3, 5, 10, 4, 2, 6, 6, 7, 6, 6, 4, 8, 4, 3, 8, 13, 6, 4, 8, 6, 2, 4, 3, 4, 7, 3, 3, 3, 2, 2, 7, 2, 5, 7, 13, 19, 11, 16, 17, 17, 14, 7, 7, 7, 7, 7, 14, 7, 7, 11, 12, 8, 12, 22, 18, 11, 6, 12, 8, 10, 6, 6, 4, 9, 16, 14, 13, 13, 6, 13, 4, 5, 8, 1, 5, 8, 2, 2, 2, 2, 2, 2, 4, 6, 6, 5, 2, 4, 1, 6, 5, 3, 5, 3, 7, 3, 6, 5, 6, 2, 4, 14, 4, 7, 7, 4, 11, 10, 3, 4, 6, 7, 4, 4, 8, 4, 8, 6, 4, 8, 5, 7, 5, 6, 2, 13, 10, 8, 13, 2, 2, 5, 7, 5, 8, 11, 5, 4, 2, 9, 7, 7, 6, 6, 5, 5, 6, 6, 4, 7, 4, 6, 3, 5, 3, 8, 6, 10, 3, 6, 4, 7, 8, 4, 8, 6, 2, 8, 6, 6, 1, 5, 4, 7, 9, 7, 8, 3, 8, 1, 14, 2, 4, 2, 2, 3, 4, 1, 4, 6, 7, 6, 9, 3, 5, 10, 6, 6, 4, 4, 6, 6, 5, 3, 7, 3, 3, 6, 6, 5, 5, 2, 8, 4, 8, 8, 5, 2, 5, 4, 5, 2, 5, 4, 5, 2, 1, 2, 3, 3, 5, 4, 5, 3, 3, 
