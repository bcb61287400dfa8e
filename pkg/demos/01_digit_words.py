# Numbers as digit words, least significant digit first.
from buchi.encoding import DigitWord, digits, v_p, value, zip_pad

print(digits(13, 2).track(0))  # (1, 0, 1, 1)
print(digits(0, 7).letters)  # the empty word encodes 0

# a k-tuple becomes a word over k-digit letters, shorter numbers padded with zeros
w = zip_pad((86, 42, 33), 5)
print(w.letters)
print(value(w))

# trailing zero letters never change the value, so encodings are not unique
print(value(w.padded(4)) == value(w))

# reading a three-track word column by column
print(value(DigitWord(5, 3, ((1, 2, 3), (2, 3, 1), (3, 1, 2)))))

# V_p(n): the largest power of p dividing n
for p in (2, 3, 10):
    print(p, [v_p(n, p) for n in range(13)])
