'''
The functional store: one FunctionTable per declared function plus the
union-find, bundled as an Instance.
'''
