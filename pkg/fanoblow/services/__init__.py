"""
fanoblow サービスパッケージ
"""
