"""
fanoblow コマンドラインパッケージ
"""
